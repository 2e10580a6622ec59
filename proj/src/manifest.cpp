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

#include "clustergate/manifest.hpp"

#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "clustergate/errors.hpp"

namespace clustergate::manifest {

using nlohmann::json;
using namespace clustergate::model;

namespace {

const json* field(const json& doc, const char* key) {
    if (!doc.is_object())
        return nullptr;
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null())
        return nullptr;
    return &*it;
}

std::string requireString(const json& doc, const char* key, const std::string& context) {
    const json* v = field(doc, key);
    if (!v || !v->is_string() || v->get<std::string>().empty())
        throw ParseError(context + ": missing " + key);
    return v->get<std::string>();
}

LabelMap labelMapFromJson(const json& doc, const std::string& context) {
    LabelMap out;
    if (!doc.is_object())
        throw ParseError(context + ": labels must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_string())
            throw ParseError(context + ": label \"" + key + "\" must be a string");
        out[key] = value.get<std::string>();
    }
    validateLabelMap(out);
    return out;
}

std::map<std::string, std::string> stringMapFromJson(const json& doc, const std::string& context) {
    std::map<std::string, std::string> out;
    if (!doc.is_object())
        throw ParseError(context + ": expected an object");
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_string())
            throw ParseError(context + ": value of \"" + key + "\" must be a string");
        out[key] = value.get<std::string>();
    }
    return out;
}

std::vector<std::string> stringListFromJson(const json& doc, const std::string& context) {
    if (!doc.is_array())
        throw ParseError(context + ": expected a list of strings");
    std::vector<std::string> out;
    for (const auto& v : doc) {
        if (!v.is_string())
            throw ParseError(context + ": expected a list of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

// Quantities appear as strings ("500m", "2Gi") or as whole JSON integers.
Quantity quantityFromJson(const json& v, ResourceKind kind, const std::string& context) {
    if (v.is_string())
        return parseQuantity(v.get<std::string>(), kind);
    if (v.is_number_integer()) {
        auto n = v.get<std::int64_t>();
        if (n < 0)
            throw ParseError(context + ": quantity must not be negative");
        return parseQuantity(std::to_string(n), kind);
    }
    throw ParseError(context + ": quantity must be a string or integer (fractional values are "
                     "not supported)");
}

ResourceMap resourceMapFromJson(const json& doc, const std::string& context) {
    ResourceMap out;
    if (!doc.is_object())
        throw ParseError(context + ": expected an object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "cpu")
            out["cpu"] = quantityFromJson(value, ResourceKind::Cpu, context + ".cpu");
        else if (key == "memory")
            out["memory"] = quantityFromJson(value, ResourceKind::Memory, context + ".memory");
        // other resource names are not modeled
    }
    return out;
}

json resourceMapToJson(const ResourceMap& map) {
    json out = json::object();
    for (const auto& [name, q] : map)
        out[name] = formatQuantity(q);
    return out;
}

Container containerFromJson(const json& doc, const std::string& context) {
    Container c;
    c.name = requireString(doc, "name", context);
    if (const json* image = field(doc, "image"))
        c.image = image->get<std::string>();
    if (const json* res = field(doc, "resources")) {
        if (const json* req = field(*res, "requests"))
            c.requests = resourceMapFromJson(*req, context + ".resources.requests");
        if (const json* lim = field(*res, "limits"))
            c.limits = resourceMapFromJson(*lim, context + ".resources.limits");
    }
    if (const json* probe = field(doc, "readinessProbe"))
        c.readinessProbe = *probe;
    if (const json* probe = field(doc, "livenessProbe"))
        c.livenessProbe = *probe;
    if (const json* sc = field(doc, "securityContext")) {
        if (const json* caps = field(*sc, "capabilities")) {
            if (const json* add = field(*caps, "add"))
                c.capabilitiesAdd = stringListFromJson(*add, context + ".capabilities.add");
            if (const json* drop = field(*caps, "drop"))
                c.capabilitiesDrop = stringListFromJson(*drop, context + ".capabilities.drop");
        }
    }
    if (const json* mounts = field(doc, "volumeMounts")) {
        for (const auto& m : *mounts)
            c.volumeMounts.push_back(VolumeMount{requireString(m, "name", context + ".volumeMounts"),
                                                 requireString(m, "mountPath",
                                                               context + ".volumeMounts")});
    }
    return c;
}

json containerToJson(const Container& c) {
    json out{{"name", c.name}};
    if (!c.image.empty())
        out["image"] = c.image;
    if (!c.requests.empty() || !c.limits.empty()) {
        json res = json::object();
        if (!c.requests.empty())
            res["requests"] = resourceMapToJson(c.requests);
        if (!c.limits.empty())
            res["limits"] = resourceMapToJson(c.limits);
        out["resources"] = res;
    }
    if (c.readinessProbe)
        out["readinessProbe"] = *c.readinessProbe;
    if (c.livenessProbe)
        out["livenessProbe"] = *c.livenessProbe;
    if (!c.capabilitiesAdd.empty() || !c.capabilitiesDrop.empty()) {
        json caps = json::object();
        if (!c.capabilitiesAdd.empty())
            caps["add"] = c.capabilitiesAdd;
        if (!c.capabilitiesDrop.empty())
            caps["drop"] = c.capabilitiesDrop;
        out["securityContext"] = json{{"capabilities", caps}};
    }
    if (!c.volumeMounts.empty()) {
        json mounts = json::array();
        for (const auto& m : c.volumeMounts)
            mounts.push_back(json{{"name", m.name}, {"mountPath", m.mountPath}});
        out["volumeMounts"] = mounts;
    }
    return out;
}

// Shared metadata handling for all top-level kinds.
struct Metadata {
    std::string name;
    std::string ns = "default";
    LabelMap labels;
    std::map<std::string, std::string> annotations;
};

Metadata metadataFromJson(const json& doc, const std::string& kind, bool requireName = true) {
    Metadata md;
    const json* meta = field(doc, "metadata");
    if (!meta) {
        if (requireName)
            throw ParseError(kind + ": missing metadata.name");
        return md;
    }
    if (const json* name = field(*meta, "name"))
        md.name = name->is_string() ? name->get<std::string>() : "";
    if (requireName && md.name.empty())
        throw ParseError(kind + ": missing metadata.name");
    if (const json* ns = field(*meta, "namespace"))
        md.ns = ns->get<std::string>();
    if (const json* labels = field(*meta, "labels"))
        md.labels = labelMapFromJson(*labels, kind + " metadata.labels");
    if (const json* ann = field(*meta, "annotations"))
        md.annotations = stringMapFromJson(*ann, kind + " metadata.annotations");
    return md;
}

json metadataToJson(const std::string& name, const std::string& ns, const LabelMap& labels,
                    const std::map<std::string, std::string>& annotations) {
    json meta = json::object();
    if (!name.empty())
        meta["name"] = name;
    if (!ns.empty())
        meta["namespace"] = ns;
    if (!labels.empty())
        meta["labels"] = labels;
    if (!annotations.empty())
        meta["annotations"] = annotations;
    return meta;
}

// Pod spec shared between Pod documents and workload pod templates.
void podSpecFromJson(const json& spec, Pod& pod, const std::string& context) {
    if (const json* sa = field(spec, "serviceAccountName"))
        pod.serviceAccount = sa->get<std::string>();
    if (const json* v = field(spec, "hostPID"))
        pod.hostPID = v->get<bool>();
    if (const json* v = field(spec, "hostIPC"))
        pod.hostIPC = v->get<bool>();
    const json* containers = field(spec, "containers");
    if (!containers || !containers->is_array() || containers->empty())
        throw ParseError(context + ": spec.containers must be a non-empty list");
    for (const auto& c : *containers)
        pod.containers.push_back(containerFromJson(c, context + " container"));
    if (const json* init = field(spec, "initContainers"))
        for (const auto& c : *init)
            pod.initContainers.push_back(containerFromJson(c, context + " initContainer"));
    if (const json* volumes = field(spec, "volumes")) {
        for (const auto& v : *volumes) {
            Volume vol;
            vol.name = requireString(v, "name", context + ".volumes");
            if (const json* empty = field(v, "emptyDir"))
                if (const json* medium = field(*empty, "medium"))
                    vol.medium = medium->get<std::string>();
            pod.volumes.push_back(std::move(vol));
        }
    }
}

json podSpecToJson(const Pod& pod) {
    json spec = json::object();
    if (pod.serviceAccount != "default")
        spec["serviceAccountName"] = pod.serviceAccount;
    if (pod.hostPID)
        spec["hostPID"] = true;
    if (pod.hostIPC)
        spec["hostIPC"] = true;
    spec["containers"] = json::array();
    for (const auto& c : pod.containers)
        spec["containers"].push_back(containerToJson(c));
    if (!pod.initContainers.empty()) {
        spec["initContainers"] = json::array();
        for (const auto& c : pod.initContainers)
            spec["initContainers"].push_back(containerToJson(c));
    }
    if (!pod.volumes.empty()) {
        json volumes = json::array();
        for (const auto& v : pod.volumes) {
            json empty = json::object();
            if (!v.medium.empty())
                empty["medium"] = v.medium;
            volumes.push_back(json{{"name", v.name}, {"emptyDir", empty}});
        }
        spec["volumes"] = volumes;
    }
    return spec;
}

std::vector<RulePort> rulePortsFromJson(const json& doc, const std::string& context) {
    std::vector<RulePort> out;
    if (!doc.is_array())
        throw ParseError(context + ": ports must be a list");
    for (const auto& entry : doc) {
        RulePort p;
        if (const json* proto = field(entry, "protocol")) {
            const std::string s = proto->get<std::string>();
            if (s == "TCP")
                p.protocol = Protocol::TCP;
            else if (s == "UDP")
                p.protocol = Protocol::UDP;
            else
                throw ParseError(context + ": unknown protocol \"" + s + "\"");
        }
        const json* port = field(entry, "port");
        if (!port || !port->is_number_integer())
            throw ParseError(context + ": port entry requires an integer port");
        p.port = port->get<int>();
        if (p.port < 1 || p.port > 65535)
            throw ParseError(context + ": port " + std::to_string(p.port) + " out of range");
        out.push_back(p);
    }
    return out;
}

std::vector<PolicyPeer> peersFromJson(const json& doc, const std::string& context) {
    std::vector<PolicyPeer> out;
    if (!doc.is_array())
        throw ParseError(context + ": peers must be a list");
    for (const auto& entry : doc) {
        PolicyPeer peer;
        if (const json* sel = field(entry, "podSelector"))
            peer.podSelector = selectorFromJson(*sel);
        if (const json* sel = field(entry, "namespaceSelector"))
            peer.namespaceSelector = selectorFromJson(*sel);
        if (const json* block = field(entry, "ipBlock")) {
            IpBlock b;
            b.cidr = requireString(*block, "cidr", context + ".ipBlock");
            if (const json* except = field(*block, "except"))
                b.except = stringListFromJson(*except, context + ".ipBlock.except");
            peer.ipBlock = b;
        }
        if (peer.ipBlock && (peer.podSelector || peer.namespaceSelector))
            throw ParseError(context + ": peer must not combine ipBlock with selectors");
        if (!peer.ipBlock && !peer.podSelector && !peer.namespaceSelector)
            throw ParseError(context + ": empty peer");
        out.push_back(std::move(peer));
    }
    return out;
}

std::vector<PolicyRule> rulesFromJson(const json& doc, const char* peerKey,
                                      const std::string& context) {
    std::vector<PolicyRule> out;
    if (!doc.is_array())
        throw ParseError(context + ": rules must be a list");
    for (const auto& entry : doc) {
        PolicyRule rule;
        if (const json* peers = field(entry, peerKey))
            rule.peers = peersFromJson(*peers, context);
        if (const json* ports = field(entry, "ports"))
            rule.ports = rulePortsFromJson(*ports, context);
        out.push_back(std::move(rule));
    }
    return out;
}

json peersToJson(const std::vector<PolicyPeer>& peers) {
    json out = json::array();
    for (const auto& peer : peers) {
        json p = json::object();
        if (peer.podSelector)
            p["podSelector"] = toJson(*peer.podSelector);
        if (peer.namespaceSelector)
            p["namespaceSelector"] = toJson(*peer.namespaceSelector);
        if (peer.ipBlock) {
            json b{{"cidr", peer.ipBlock->cidr}};
            if (!peer.ipBlock->except.empty())
                b["except"] = peer.ipBlock->except;
            p["ipBlock"] = b;
        }
        out.push_back(p);
    }
    return out;
}

json rulesToJson(const std::vector<PolicyRule>& rules, const char* peerKey) {
    json out = json::array();
    for (const auto& rule : rules) {
        json r = json::object();
        if (!rule.peers.empty())
            r[peerKey] = peersToJson(rule.peers);
        if (!rule.ports.empty()) {
            json ports = json::array();
            for (const auto& p : rule.ports)
                ports.push_back(json{{"protocol", toString(p.protocol)}, {"port", p.port}});
            r["ports"] = ports;
        }
        out.push_back(r);
    }
    return out;
}

} // namespace

Selector selectorFromJson(const json& doc) {
    Selector sel;
    if (!doc.is_object())
        throw ParseError("selector must be an object");
    if (const json* ml = field(doc, "matchLabels"))
        sel.matchLabels = labelMapFromJson(*ml, "selector.matchLabels");
    if (const json* exprs = field(doc, "matchExpressions")) {
        if (!exprs->is_array())
            throw ParseError("selector.matchExpressions must be a list");
        for (const auto& e : *exprs) {
            SelectorRequirement req;
            req.key = requireString(e, "key", "selector.matchExpressions");
            req.op = selectorOpFromString(requireString(e, "operator", "selector.matchExpressions"));
            if (const json* values = field(e, "values"))
                req.values = stringListFromJson(*values, "selector.matchExpressions.values");
            sel.matchExpressions.push_back(std::move(req));
        }
    }
    validateSelector(sel);
    return sel;
}

json toJson(const Selector& sel) {
    json out = json::object();
    if (!sel.matchLabels.empty())
        out["matchLabels"] = sel.matchLabels;
    if (!sel.matchExpressions.empty()) {
        json exprs = json::array();
        for (const auto& req : sel.matchExpressions) {
            json e{{"key", req.key}, {"operator", toString(req.op)}};
            if (!req.values.empty())
                e["values"] = req.values;
            exprs.push_back(e);
        }
        out["matchExpressions"] = exprs;
    }
    return out;
}

Pod podFromJson(const json& doc) {
    Pod pod;
    Metadata md = metadataFromJson(doc, "Pod");
    pod.name = md.name;
    pod.ns = md.ns;
    pod.labels = md.labels;
    pod.annotations = md.annotations;
    const json* spec = field(doc, "spec");
    if (!spec)
        throw ParseError("Pod \"" + pod.name + "\": missing spec");
    podSpecFromJson(*spec, pod, "Pod \"" + pod.name + "\"");
    if (const json* status = field(doc, "status"))
        if (const json* ip = field(*status, "podIP"))
            pod.podIP = ip->get<std::string>();
    validate(pod);
    return pod;
}

json toJson(const Pod& pod) {
    json out{{"apiVersion", "v1"}, {"kind", "Pod"}};
    out["metadata"] = metadataToJson(pod.name, pod.ns, pod.labels, pod.annotations);
    out["spec"] = podSpecToJson(pod);
    if (pod.podIP)
        out["status"] = json{{"podIP", *pod.podIP}};
    return out;
}

WorkloadObject workloadFromJson(const json& doc) {
    WorkloadObject object;
    const std::string kindStr = requireString(doc, "kind", "object");
    auto kind = workloadKindFromString(kindStr);
    if (!kind)
        throw ParseError("unknown kind \"" + kindStr + "\"");
    object.kind = *kind;
    Metadata md = metadataFromJson(doc, kindStr);
    object.name = md.name;
    object.ns = object.kind == WorkloadKind::ClusterRoleBinding ? "" : md.ns;
    object.labels = md.labels;
    object.annotations = md.annotations;

    if (isBindingKind(object.kind)) {
        if (const json* subjects = field(doc, "subjects")) {
            if (!subjects->is_array())
                throw ParseError(kindStr + " \"" + object.name + "\": subjects must be a list");
            for (const auto& s : *subjects)
                object.subjects.push_back(BindingSubject{
                    requireString(s, "kind", kindStr + ".subjects"),
                    requireString(s, "name", kindStr + ".subjects")});
        }
        validate(object);
        return object;
    }

    const json* spec = field(doc, "spec");
    if (spec) {
        if (const json* replicas = field(*spec, "replicas")) {
            if (!replicas->is_number_integer())
                throw ParseError(kindStr + " \"" + object.name + "\": replicas must be an integer");
            object.replicas = replicas->get<std::int64_t>();
        }
        if (const json* tmpl = field(*spec, "template")) {
            Pod pod;
            Metadata tmd = metadataFromJson(*tmpl, kindStr + ".template", /*requireName=*/false);
            pod.labels = tmd.labels;
            pod.annotations = tmd.annotations;
            pod.ns = object.ns;
            const json* tspec = field(*tmpl, "spec");
            if (!tspec)
                throw ParseError(kindStr + " \"" + object.name + "\": template missing spec");
            podSpecFromJson(*tspec, pod, kindStr + " \"" + object.name + "\" template");
            object.podTemplate = std::move(pod);
        }
    }
    validate(object);
    return object;
}

json toJson(const WorkloadObject& object) {
    const std::string kindStr = toString(object.kind);
    json out{{"apiVersion", isBindingKind(object.kind) ? "rbac.authorization.k8s.io/v1" : "apps/v1"},
             {"kind", kindStr}};
    out["metadata"] = metadataToJson(object.name, object.ns, object.labels, object.annotations);
    if (isBindingKind(object.kind)) {
        if (!object.subjects.empty()) {
            json subjects = json::array();
            for (const auto& s : object.subjects)
                subjects.push_back(json{{"kind", s.kind}, {"name", s.name}});
            out["subjects"] = subjects;
        }
        return out;
    }
    json spec = json::object();
    if (object.replicas)
        spec["replicas"] = *object.replicas;
    if (object.podTemplate) {
        const Pod& pod = *object.podTemplate;
        json tmpl = json::object();
        json tmeta = metadataToJson("", "", pod.labels, pod.annotations);
        if (!tmeta.empty())
            tmpl["metadata"] = tmeta;
        tmpl["spec"] = podSpecToJson(pod);
        spec["template"] = tmpl;
    }
    if (!spec.empty())
        out["spec"] = spec;
    return out;
}

NetworkPolicy networkPolicyFromJson(const json& doc) {
    NetworkPolicy policy;
    Metadata md = metadataFromJson(doc, "NetworkPolicy");
    policy.name = md.name;
    policy.ns = md.ns;
    const json* spec = field(doc, "spec");
    if (!spec)
        throw ParseError("NetworkPolicy \"" + policy.name + "\": missing spec");
    if (const json* sel = field(*spec, "podSelector"))
        policy.podSelector = selectorFromJson(*sel);
    const std::string context = "NetworkPolicy \"" + policy.name + "\"";
    if (const json* ingress = field(*spec, "ingress"))
        policy.ingressRules = rulesFromJson(*ingress, "from", context + ".ingress");
    if (const json* egress = field(*spec, "egress"))
        policy.egressRules = rulesFromJson(*egress, "to", context + ".egress");
    if (const json* types = field(*spec, "policyTypes")) {
        for (const auto& t : stringListFromJson(*types, context + ".policyTypes")) {
            if (t == "Ingress")
                policy.policyTypes.insert(Direction::Ingress);
            else if (t == "Egress")
                policy.policyTypes.insert(Direction::Egress);
            else
                throw ParseError(context + ": unknown policy type \"" + t + "\"");
        }
    } else {
        // Defaulting rule: Ingress always; Egress only when egress rules exist.
        policy.policyTypes.insert(Direction::Ingress);
        if (!policy.egressRules.empty())
            policy.policyTypes.insert(Direction::Egress);
    }
    return policy;
}

json toJson(const NetworkPolicy& policy) {
    json out{{"apiVersion", "networking.k8s.io/v1"}, {"kind", "NetworkPolicy"}};
    out["metadata"] = metadataToJson(policy.name, policy.ns, {}, {});
    json spec = json::object();
    spec["podSelector"] = toJson(policy.podSelector);
    json types = json::array();
    if (policy.policyTypes.count(Direction::Ingress))
        types.push_back("Ingress");
    if (policy.policyTypes.count(Direction::Egress))
        types.push_back("Egress");
    spec["policyTypes"] = types;
    if (!policy.ingressRules.empty())
        spec["ingress"] = rulesToJson(policy.ingressRules, "from");
    if (!policy.egressRules.empty())
        spec["egress"] = rulesToJson(policy.egressRules, "to");
    out["spec"] = spec;
    return out;
}

json toJson(const model::Container& container) {
    return containerToJson(container);
}

json toJson(const ParsedManifest& object) {
    return std::visit([](const auto& o) { return toJson(o); }, object);
}

ParsedManifest manifestFromJson(const json& doc) {
    const std::string kind = requireString(doc, "kind", "document");
    if (kind == "Pod")
        return podFromJson(doc);
    if (kind == "NetworkPolicy")
        return networkPolicyFromJson(doc);
    if (workloadKindFromString(kind))
        return workloadFromJson(doc);
    throw ParseError("unknown kind \"" + kind + "\"");
}

namespace {

json parseJsonText(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

bool yamlLooksBool(const std::string& s, bool& out) {
    if (s == "true" || s == "True" || s == "TRUE") { out = true; return true; }
    if (s == "false" || s == "False" || s == "FALSE") { out = false; return true; }
    return false;
}

json yamlNodeToJson(const YAML::Node& node) {
    switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
        return nullptr;
    case YAML::NodeType::Scalar: {
        const std::string& s = node.Scalar();
        if (node.Tag() == "!") // quoted scalar stays a string
            return s;
        if (s == "null" || s == "~" || s.empty())
            return nullptr;
        bool b;
        if (yamlLooksBool(s, b))
            return b;
        static const std::regex intRe(R"(^-?\d+$)");
        static const std::regex floatRe(R"(^[-+]?(\d+\.\d*|\.\d+|\d+[eE][-+]?\d+|\d+\.\d*[eE][-+]?\d+)$)");
        if (std::regex_match(s, intRe)) {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(s.data() + (s[0] == '-' ? 1 : 0), s.data() + s.size(), v);
            if (ec == std::errc() && p == s.data() + s.size())
                return s[0] == '-' ? json(-v) : json(v);
            return s; // out-of-range integers stay strings
        }
        if (std::regex_match(s, floatRe))
            return std::stod(s);
        return s;
    }
    case YAML::NodeType::Sequence: {
        json out = json::array();
        for (const auto& item : node)
            out.push_back(yamlNodeToJson(item));
        return out;
    }
    case YAML::NodeType::Map: {
        json out = json::object();
        for (const auto& kv : node)
            out[kv.first.Scalar()] = yamlNodeToJson(kv.second);
        return out;
    }
    }
    return nullptr;
}

} // namespace

json yamlToJson(std::string_view text) {
    try {
        YAML::Node node = YAML::Load(std::string(text));
        return yamlNodeToJson(node);
    } catch (const YAML::Exception& e) {
        throw ParseError("YAML syntax error at line " + std::to_string(e.mark.line + 1) +
                         ", column " + std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
}

std::vector<json> yamlStreamToJson(std::string_view text) {
    std::vector<json> out;
    try {
        std::istringstream in{std::string(text)};
        for (const auto& node : YAML::LoadAll(in)) {
            if (node.IsNull() || !node.IsDefined())
                continue;
            out.push_back(yamlNodeToJson(node));
        }
    } catch (const YAML::Exception& e) {
        throw ParseError("YAML syntax error at line " + std::to_string(e.mark.line + 1) +
                         ", column " + std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    return out;
}

ParsedManifest parseManifest(std::string_view text, Format format) {
    const json doc = format == Format::Json ? parseJsonText(text) : yamlToJson(text);
    return manifestFromJson(doc);
}

std::vector<ParsedManifest> parseManifestStream(std::string_view text, Format format) {
    std::vector<ParsedManifest> out;
    if (format == Format::Json) {
        out.push_back(manifestFromJson(parseJsonText(text)));
        return out;
    }
    for (const auto& doc : yamlStreamToJson(text))
        out.push_back(manifestFromJson(doc));
    return out;
}

std::vector<ParsedManifest> loadManifestFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw NotFoundError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const bool isJson = path.size() > 5 && path.substr(path.size() - 5) == ".json";
    return parseManifestStream(buffer.str(), isJson ? Format::Json : Format::Yaml);
}

ClusterState clusterStateFromJson(const json& doc) {
    ClusterState state;
    if (!doc.is_object())
        throw ParseError("cluster state must be a JSON object");
    if (const json* namespaces = field(doc, "namespaces")) {
        for (const auto& n : *namespaces) {
            NamespaceInfo info;
            if (n.is_string()) {
                info.name = n.get<std::string>();
            } else {
                info.name = requireString(n, "name", "namespaces");
                if (const json* labels = field(n, "labels"))
                    info.labels = labelMapFromJson(*labels, "namespace \"" + info.name + "\"");
            }
            info.labels.emplace("kubernetes.io/metadata.name", info.name);
            state.namespaces.push_back(std::move(info));
        }
    }
    if (const json* pods = field(doc, "pods"))
        for (const auto& p : *pods)
            state.pods.push_back(podFromJson(p));
    if (const json* objects = field(doc, "objects"))
        for (const auto& o : *objects)
            state.objects.push_back(workloadFromJson(o));
    if (const json* policies = field(doc, "networkPolicies"))
        for (const auto& p : *policies)
            state.networkPolicies.push_back(networkPolicyFromJson(p));
    validate(state);
    return state;
}

ClusterState loadClusterState(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw NotFoundError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return clusterStateFromJson(parseJsonText(buffer.str()));
}

json toJson(const ClusterState& state) {
    json out = json::object();
    out["namespaces"] = json::array();
    for (const auto& ns : state.namespaces) {
        json n{{"name", ns.name}};
        if (!ns.labels.empty())
            n["labels"] = ns.labels;
        out["namespaces"].push_back(n);
    }
    out["pods"] = json::array();
    for (const auto& pod : state.pods)
        out["pods"].push_back(toJson(pod));
    out["objects"] = json::array();
    for (const auto& object : state.objects)
        out["objects"].push_back(toJson(object));
    out["networkPolicies"] = json::array();
    for (const auto& policy : state.networkPolicies)
        out["networkPolicies"].push_back(toJson(policy));
    return out;
}

} // namespace clustergate::manifest
