// Copyright 2026 the clustergate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "clustergate/constraints.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "clustergate/errors.hpp"
#include "clustergate/labels.hpp"
#include "clustergate/quantity.hpp"

namespace clustergate::constraints {

using nlohmann::json;
using namespace clustergate::model;

ObjectView viewOf(const Pod& pod) {
    ObjectView v;
    v.kind = "Pod";
    v.ns = pod.ns;
    v.name = pod.name;
    v.labels = &pod.labels;
    v.pod = &pod;
    return v;
}

ObjectView viewOf(const WorkloadObject& object) {
    ObjectView v;
    v.kind = toString(object.kind);
    v.ns = object.ns;
    v.name = object.name;
    v.labels = &object.labels;
    if (object.podTemplate)
        v.pod = &*object.podTemplate;
    v.replicas = object.replicas;
    if (isBindingKind(object.kind))
        v.subjects = &object.subjects;
    return v;
}

ObjectView viewOf(const NetworkPolicy& policy) {
    static const LabelMap empty;
    ObjectView v;
    v.kind = "NetworkPolicy";
    v.ns = policy.ns;
    v.name = policy.name;
    v.labels = &empty;
    return v;
}

ObjectView viewOf(const manifest::ParsedManifest& object) {
    return std::visit([](const auto& o) { return viewOf(o); }, object);
}

std::string toString(EnforcementAction action) {
    switch (action) {
    case EnforcementAction::Deny: return "deny";
    case EnforcementAction::Warn: return "warn";
    case EnforcementAction::Dryrun: return "dryrun";
    }
    return "deny";
}

EnforcementAction enforcementActionFromString(const std::string& text) {
    if (text == "deny")
        return EnforcementAction::Deny;
    if (text == "warn")
        return EnforcementAction::Warn;
    if (text == "dryrun")
        return EnforcementAction::Dryrun;
    throw ValidationError("unknown enforcementAction \"" + text + "\"");
}

std::string toString(ReviewOperation op) {
    switch (op) {
    case ReviewOperation::Create: return "create";
    case ReviewOperation::Update: return "update";
    case ReviewOperation::Delete: return "delete";
    }
    return "create";
}

ReviewOperation reviewOperationFromString(const std::string& text) {
    std::string lower = text;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "create")
        return ReviewOperation::Create;
    if (lower == "update")
        return ReviewOperation::Update;
    if (lower == "delete")
        return ReviewOperation::Delete;
    throw ValidationError("unknown operation \"" + text + "\"");
}

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

// Checks walk regular and init containers together.
std::vector<const Container*> containersOf(const ObjectView& view) {
    std::vector<const Container*> out;
    if (!view.pod)
        return out;
    for (const auto& c : view.pod->containers)
        out.push_back(&c);
    for (const auto& c : view.pod->initContainers)
        out.push_back(&c);
    return out;
}

std::vector<std::string> paramStringList(const json& params, const char* key) {
    std::vector<std::string> out;
    auto it = params.find(key);
    if (it == params.end())
        return out;
    for (const auto& v : *it)
        out.push_back(v.get<std::string>());
    return out;
}

Quantity paramQuantity(const json& params, const char* key) {
    const ResourceKind kind =
        std::string(key) == "cpu" ? ResourceKind::Cpu : ResourceKind::Memory;
    return parseQuantity(params.at(key).get<std::string>(), kind);
}

std::string joinList(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty())
            out += ", ";
        out += s;
    }
    return out;
}

// Exact decimal ratio; load-time validation guarantees the plain form.
struct Rational {
    __int128 num = 0;
    __int128 den = 1;
};

Rational ratioFromJson(const json& value) {
    const std::string text = value.dump();
    Rational r;
    bool fraction = false;
    for (char c : text) {
        if (c == '.') {
            fraction = true;
            continue;
        }
        r.num = r.num * 10 + (c - '0');
        if (fraction)
            r.den *= 10;
    }
    return r;
}

std::vector<std::string> checkAllowedRepos(const Constraint& c, const ObjectView& view) {
    std::vector<std::string> out;
    const auto repos = paramStringList(c.parameters, "repos");
    for (const Container* ctr : containersOf(view)) {
        bool ok = false;
        for (const auto& repo : repos)
            if (ctr->image.rfind(repo, 0) == 0)
                ok = true;
        if (!ok)
            out.push_back("container " + quoted(ctr->name) + " image " + quoted(ctr->image) +
                          " does not begin with an allowed repository prefix (" +
                          joinList(repos) + ")");
    }
    return out;
}

std::vector<std::string> checkResourceBound(const Constraint& c, const ObjectView& view,
                                            bool limits) {
    std::vector<std::string> out;
    const char* word = limits ? "limit" : "request";
    const Quantity maxCpu = paramQuantity(c.parameters, "cpu");
    const Quantity maxMem = paramQuantity(c.parameters, "memory");
    for (const Container* ctr : containersOf(view)) {
        const ResourceMap& res = limits ? ctr->limits : ctr->requests;
        for (const auto& [name, max] : {std::pair{"cpu", maxCpu}, std::pair{"memory", maxMem}}) {
            auto it = res.find(name);
            if (it == res.end()) {
                out.push_back("container " + quoted(ctr->name) + " has no " + name + " " + word);
            } else if (it->second.value > max.value) {
                out.push_back("container " + quoted(ctr->name) + " " + name + " " + word + " " +
                              formatQuantity(it->second) + " exceeds maximum " +
                              formatQuantity(max));
            }
        }
    }
    return out;
}

std::vector<std::string> checkContainerRatios(const Constraint& c, const ObjectView& view) {
    std::vector<std::string> out;
    const Rational ratio = ratioFromJson(c.parameters.at("ratio"));
    const std::string ratioText = c.parameters.at("ratio").dump();
    for (const Container* ctr : containersOf(view)) {
        for (const char* name : {"cpu", "memory"}) {
            auto limit = ctr->limits.find(name);
            if (limit == ctr->limits.end())
                continue;
            auto request = ctr->requests.find(name);
            if (request == ctr->requests.end()) {
                out.push_back("container " + quoted(ctr->name) + " has a " + std::string(name) +
                              " limit but no " + name + " request");
                continue;
            }
            // limit/request <= num/den, exactly: limit*den <= num*request
            const __int128 lhs = static_cast<__int128>(limit->second.value) * ratio.den;
            const __int128 rhs = ratio.num * static_cast<__int128>(request->second.value);
            if (lhs > rhs)
                out.push_back("container " + quoted(ctr->name) + " " + name + " limit " +
                              formatQuantity(limit->second) + " exceeds " + ratioText +
                              " times the request " + formatQuantity(request->second));
        }
    }
    return out;
}

std::vector<std::string> checkRequiredResources(const Constraint& c, const ObjectView& view) {
    std::vector<std::string> out;
    const auto requiredLimits = paramStringList(c.parameters, "limits");
    const auto requiredRequests = paramStringList(c.parameters, "requests");
    for (const Container* ctr : containersOf(view)) {
        for (const auto& name : requiredLimits)
            if (!ctr->limits.count(name))
                out.push_back("container " + quoted(ctr->name) + " has no " + name + " limit");
        for (const auto& name : requiredRequests)
            if (!ctr->requests.count(name))
                out.push_back("container " + quoted(ctr->name) + " has no " + name + " request");
    }
    return out;
}

std::vector<std::string> checkDisallowAnonymous(const Constraint&, const ObjectView& view) {
    std::vector<std::string> out;
    if (!view.subjects)
        return out;
    for (const auto& s : *view.subjects) {
        const bool anonymous = (s.kind == "Group" && s.name == "system:unauthenticated") ||
                               (s.kind == "User" && s.name == "system:anonymous");
        if (anonymous)
            out.push_back("binding grants access to unauthenticated subject " + s.kind + " " +
                          quoted(s.name));
    }
    return out;
}

std::vector<std::string> checkReplicaLimits(const Constraint& c, const ObjectView& view) {
    std::vector<std::string> out;
    if (!view.replicas)
        return out;
    const auto& ranges = c.parameters.at("ranges");
    bool ok = false;
    std::vector<std::string> rangeTexts;
    for (const auto& r : ranges) {
        const auto lo = r.at("min").get<std::int64_t>();
        const auto hi = r.at("max").get<std::int64_t>();
        rangeTexts.push_back("[" + std::to_string(lo) + ".." + std::to_string(hi) + "]");
        if (*view.replicas >= lo && *view.replicas <= hi)
            ok = true;
    }
    if (!ok)
        out.push_back("replicas=" + std::to_string(*view.replicas) +
                      " is outside every allowed range " + joinList(rangeTexts));
    return out;
}

std::vector<std::string> checkRequiredProbes(const Constraint& c, const ObjectView& view) {
    std::vector<std::string> out;
    const auto probes = paramStringList(c.parameters, "probes");
    for (const Container* ctr : containersOf(view)) {
        for (const auto& probe : probes) {
            bool defined = false;
            if (probe == "readinessProbe")
                defined = ctr->readinessProbe.has_value();
            else if (probe == "livenessProbe")
                defined = ctr->livenessProbe.has_value();
            if (!defined)
                out.push_back("container " + quoted(ctr->name) + " is missing " + probe);
        }
    }
    return out;
}

std::vector<std::string> checkPspCapabilities(const Constraint& c, const ObjectView& view) {
    std::vector<std::string> out;
    const auto allowed = paramStringList(c.parameters, "allowedCapabilities");
    const auto requiredDrop = paramStringList(c.parameters, "requiredDropCapabilities");
    const bool wildcard = std::find(allowed.begin(), allowed.end(), "*") != allowed.end();
    for (const Container* ctr : containersOf(view)) {
        for (const auto& cap : ctr->capabilitiesAdd) {
            if (!wildcard &&
                std::find(allowed.begin(), allowed.end(), cap) == allowed.end())
                out.push_back("container " + quoted(ctr->name) + " adds capability " +
                              quoted(cap) + " which is not in the allowed set");
        }
        for (const auto& cap : requiredDrop) {
            if (std::find(ctr->capabilitiesDrop.begin(), ctr->capabilitiesDrop.end(), cap) ==
                ctr->capabilitiesDrop.end())
                out.push_back("container " + quoted(ctr->name) + " does not drop required capability " +
                              quoted(cap));
        }
    }
    return out;
}

std::vector<std::string> checkPspHostNamespaces(const Constraint&, const ObjectView& view) {
    std::vector<std::string> out;
    if (!view.pod)
        return out;
    if (view.pod->hostPID)
        out.push_back("pod shares the host PID namespace (hostPID=true)");
    if (view.pod->hostIPC)
        out.push_back("pod shares the host IPC namespace (hostIPC=true)");
    return out;
}

TemplateRegistry makeBuiltinRegistry() {
    TemplateRegistry reg;
    using PT = ParamType;
    reg.add({"k8sallowedrepos", "k8sallowedrepos",
             {{"repos", {PT::StringList, true}}},
             checkAllowedRepos});
    reg.add({"k8scontainerlimits", "k8scontainerlimits",
             {{"cpu", {PT::Quantity, true}}, {"memory", {PT::Quantity, true}}},
             [](const Constraint& c, const ObjectView& v) {
                 return checkResourceBound(c, v, /*limits=*/true);
             }});
    reg.add({"k8scontainerrequests", "k8scontainerrequests",
             {{"cpu", {PT::Quantity, true}}, {"memory", {PT::Quantity, true}}},
             [](const Constraint& c, const ObjectView& v) {
                 return checkResourceBound(c, v, /*limits=*/false);
             }});
    reg.add({"k8scontainerratios", "k8scontainerratios",
             {{"ratio", {PT::Number, true}}},
             checkContainerRatios});
    reg.add({"k8srequiredresources", "k8srequiredresources",
             {{"limits", {PT::StringList, false}}, {"requests", {PT::StringList, false}}},
             checkRequiredResources});
    reg.add({"k8sdisallowanonymous", "k8sdisallowanonymous", {}, checkDisallowAnonymous});
    reg.add({"k8sreplicalimits", "k8sreplicalimits",
             {{"ranges", {PT::RangeList, true}}},
             checkReplicaLimits});
    reg.add({"k8srequiredprobes", "k8srequiredprobes",
             {{"probes", {PT::StringList, true}}},
             checkRequiredProbes});
    reg.add({"k8spspcapabilities", "k8spspcapabilities",
             {{"allowedCapabilities", {PT::StringList, false}},
              {"requiredDropCapabilities", {PT::StringList, false}}},
             checkPspCapabilities});
    reg.add({"k8spsphostnamespaces", "k8spsphostnamespaces", {}, checkPspHostNamespaces});
    return reg;
}

void validateParamValue(const std::string& constraintName, const std::string& paramName,
                        ParamType type, const json& value) {
    const std::string where =
        "constraint \"" + constraintName + "\" parameter \"" + paramName + "\"";
    switch (type) {
    case ParamType::StringList: {
        if (!value.is_array())
            throw ValidationError(where + " must be a list of strings");
        for (const auto& v : value)
            if (!v.is_string())
                throw ValidationError(where + " must be a list of strings");
        break;
    }
    case ParamType::Quantity: {
        if (!value.is_string())
            throw ValidationError(where + " must be a quantity string");
        const ResourceKind kind =
            paramName == "cpu" ? ResourceKind::Cpu : ResourceKind::Memory;
        parseQuantity(value.get<std::string>(), kind); // throws on bad text
        break;
    }
    case ParamType::Number: {
        if (!value.is_number())
            throw ValidationError(where + " must be a number");
        const double d = value.get<double>();
        if (d <= 0 || d > 1000000)
            throw ValidationError(where + " must be in (0, 1000000]");
        static const std::regex plain(R"(^\d+(\.\d+)?$)");
        if (!std::regex_match(value.dump(), plain))
            throw ValidationError(where + " must be a plain decimal number");
        break;
    }
    case ParamType::RangeList: {
        if (!value.is_array() || value.empty())
            throw ValidationError(where + " must be a non-empty list of {min, max} ranges");
        for (const auto& r : value) {
            if (!r.is_object() || !r.contains("min") || !r.contains("max") ||
                !r.at("min").is_number_integer() || !r.at("max").is_number_integer())
                throw ValidationError(where + " entries must be {min: int, max: int}");
            if (r.at("min").get<std::int64_t>() > r.at("max").get<std::int64_t>())
                throw ValidationError(where + " has a range with min > max");
        }
        break;
    }
    case ParamType::String: {
        if (!value.is_string())
            throw ValidationError(where + " must be a string");
        break;
    }
    }
}

void validateParameters(const ConstraintTemplate& tmpl, const json& params,
                        const std::string& constraintName) {
    if (!params.is_object())
        throw ValidationError("constraint \"" + constraintName + "\": parameters must be an object");
    for (const auto& [name, spec] : tmpl.parameterSchema) {
        auto it = params.find(name);
        if (it == params.end()) {
            if (spec.required)
                throw ValidationError("constraint \"" + constraintName +
                                      "\": missing required parameter \"" + name + "\"");
            continue;
        }
        validateParamValue(constraintName, name, spec.type, *it);
        if (spec.required && spec.type == ParamType::StringList && it->empty())
            throw ValidationError("constraint \"" + constraintName + "\" parameter \"" + name +
                                  "\" must not be empty");
    }
    for (const auto& [name, value] : params.items()) {
        (void)value;
        if (!tmpl.parameterSchema.count(name))
            throw ValidationError("constraint \"" + constraintName +
                                  "\": unknown parameter \"" + name + "\" for template " +
                                  tmpl.name);
    }
}

} // namespace

const TemplateRegistry& TemplateRegistry::builtin() {
    static const TemplateRegistry registry = makeBuiltinRegistry();
    return registry;
}

void TemplateRegistry::add(ConstraintTemplate tmpl) {
    if (!tmpl.check)
        throw ValidationError("template \"" + tmpl.name + "\" has no check function");
    templates_[tmpl.name] = std::move(tmpl);
}

const ConstraintTemplate* TemplateRegistry::find(const std::string& name) const {
    auto it = templates_.find(name);
    return it == templates_.end() ? nullptr : &it->second;
}

std::vector<std::string> TemplateRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, tmpl] : templates_) {
        (void)tmpl;
        out.push_back(name);
    }
    return out;
}

json toJson(const Violation& violation) {
    return json{{"constraint", violation.constraintName},
                {"kind", violation.objectRef.kind},
                {"namespace", violation.objectRef.ns},
                {"name", violation.objectRef.name},
                {"message", violation.message},
                {"enforcementAction", toString(violation.enforcementAction)}};
}

json toJson(const AuditReport& report) {
    json per = json::object();
    for (const auto& [name, violations] : report.perConstraint) {
        json list = json::array();
        for (const auto& v : violations)
            list.push_back(toJson(v));
        per[name] = list;
    }
    return json{{"total", report.total}, {"perConstraint", per}};
}

Constraint constraintFromJson(const json& doc, const TemplateRegistry& registry) {
    if (!doc.is_object())
        throw ValidationError("constraint document must be an object");
    Constraint c;
    auto need = [&](const char* key) {
        auto it = doc.find(key);
        if (it == doc.end() || !it->is_string() || it->get<std::string>().empty())
            throw ValidationError(std::string("constraint: missing ") + key);
        return it->get<std::string>();
    };
    c.name = need("name");
    c.templateName = need("template");
    c.tmpl = registry.find(c.templateName);
    if (!c.tmpl)
        throw ValidationError("constraint \"" + c.name + "\": unknown template \"" +
                              c.templateName + "\"");
    if (auto it = doc.find("enforcementAction"); it != doc.end() && !it->is_null())
        c.enforcementAction = enforcementActionFromString(it->get<std::string>());
    if (auto it = doc.find("match"); it != doc.end() && !it->is_null()) {
        const json& m = *it;
        auto list = [&](const char* key) {
            std::vector<std::string> out;
            if (auto f = m.find(key); f != m.end() && !f->is_null())
                for (const auto& v : *f)
                    out.push_back(v.get<std::string>());
            return out;
        };
        c.match.kinds = list("kinds");
        c.match.namespaces = list("namespaces");
        c.match.excludedNamespaces = list("excludedNamespaces");
        if (auto f = m.find("labelSelector"); f != m.end() && !f->is_null())
            c.match.labelSelector = manifest::selectorFromJson(*f);
    }
    c.parameters = json::object();
    if (auto it = doc.find("parameters"); it != doc.end() && !it->is_null())
        c.parameters = *it;
    validateParameters(*c.tmpl, c.parameters, c.name);
    return c;
}

std::vector<Constraint> loadConstraintsDir(const std::string& dir,
                                           const TemplateRegistry& registry) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw NotFoundError("constraint directory " + dir + " does not exist");
    std::vector<Constraint> out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        const auto ext = entry.path().extension().string();
        if (ext == ".json" || ext == ".yaml" || ext == ".yml")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream buffer;
        buffer << in.rdbuf();
        std::vector<json> docs;
        if (path.extension() == ".json")
            docs.push_back(json::parse(buffer.str()));
        else
            docs = manifest::yamlStreamToJson(buffer.str());
        for (const auto& doc : docs) {
            try {
                out.push_back(constraintFromJson(doc, registry));
            } catch (const Error& e) {
                throw ValidationError(path.filename().string() + ": " + e.what());
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Constraint& a, const Constraint& b) { return a.name < b.name; });
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].name == out[i - 1].name)
            throw ValidationError("duplicate constraint name \"" + out[i].name + "\"");
    return out;
}

bool constraintMatches(const Constraint& constraint, const ObjectView& object) {
    const auto& m = constraint.match;
    if (!m.kinds.empty() &&
        std::find(m.kinds.begin(), m.kinds.end(), object.kind) == m.kinds.end())
        return false;
    if (std::find(m.excludedNamespaces.begin(), m.excludedNamespaces.end(), object.ns) !=
        m.excludedNamespaces.end())
        return false;
    if (!m.namespaces.empty() &&
        std::find(m.namespaces.begin(), m.namespaces.end(), object.ns) == m.namespaces.end())
        return false;
    return selectorMatches(m.labelSelector, *object.labels);
}

std::vector<Violation> check(const Constraint& constraint, const ObjectView& object) {
    std::vector<Violation> out;
    for (auto& message : constraint.tmpl->check(constraint, object)) {
        Violation v;
        v.constraintName = constraint.name;
        v.objectRef = ObjectRef{object.kind, object.ns, object.name};
        v.message = std::move(message);
        v.enforcementAction = constraint.enforcementAction;
        out.push_back(std::move(v));
    }
    return out;
}

Decision review(const ReviewRequest& request, const std::vector<Constraint>& constraints) {
    const manifest::ParsedManifest* target = nullptr;
    if (request.object)
        target = &*request.object;
    else if (request.oldObject)
        target = &*request.oldObject;
    if (!target)
        throw ValidationError("review request carries no object");
    const ObjectView view = viewOf(*target);
    Decision decision;
    for (const auto& constraint : constraints) {
        if (!constraintMatches(constraint, view))
            continue;
        auto violations = check(constraint, view);
        decision.violations.insert(decision.violations.end(), violations.begin(),
                                   violations.end());
    }
    bool denied = false;
    for (const auto& v : decision.violations)
        denied = denied || v.enforcementAction == EnforcementAction::Deny;
    decision.allowed = request.operation == ReviewOperation::Delete || !denied;
    return decision;
}

AuditReport audit(const ClusterState& state, const std::vector<Constraint>& constraints) {
    AuditReport report;
    for (const auto& constraint : constraints) {
        auto& list = report.perConstraint[constraint.name];
        auto evaluate = [&](const ObjectView& view) {
            if (!constraintMatches(constraint, view))
                return;
            auto violations = check(constraint, view);
            list.insert(list.end(), violations.begin(), violations.end());
        };
        for (const auto& pod : state.pods)
            evaluate(viewOf(pod));
        for (const auto& object : state.objects)
            evaluate(viewOf(object));
        std::stable_sort(list.begin(), list.end(), [](const Violation& a, const Violation& b) {
            return std::tie(a.objectRef.ns, a.objectRef.name) <
                   std::tie(b.objectRef.ns, b.objectRef.name);
        });
        report.total += list.size();
    }
    return report;
}

} // namespace clustergate::constraints
