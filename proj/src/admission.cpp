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

#include "clustergate/admission.hpp"

#include <type_traits>
#include <utility>
#include <variant>

#include <httplib.h>

#include "clustergate/errors.hpp"

namespace clustergate::admission {
namespace {

using nlohmann::json;

struct Envelope {
    std::string uid;
    constraints::ReviewOperation operation = constraints::ReviewOperation::Create;
    const json* object = nullptr;
    const json* oldObject = nullptr;
};

const json* objectField(const json& request, const char* name) {
    auto it = request.find(name);
    if (it == request.end() || it->is_null())
        return nullptr;
    if (!it->is_object())
        throw ParseError(std::string("request.") + name + " must be a JSON object");
    return &*it;
}

Envelope parseEnvelope(const json& review) {
    if (!review.is_object())
        throw ParseError("admission review must be a JSON object");
    auto reqIt = review.find("request");
    if (reqIt == review.end() || !reqIt->is_object())
        throw ParseError("admission review carries no request object");
    const json& request = *reqIt;

    Envelope env;
    auto uidIt = request.find("uid");
    if (uidIt == request.end() || !uidIt->is_string() || uidIt->get<std::string>().empty())
        throw ParseError("request.uid must be a non-empty string");
    env.uid = uidIt->get<std::string>();

    auto opIt = request.find("operation");
    if (opIt == request.end() || !opIt->is_string())
        throw ParseError("request.operation must be a string");
    try {
        env.operation = constraints::reviewOperationFromString(opIt->get<std::string>());
    } catch (const Error& e) {
        throw ParseError(e.what());
    }

    env.object = objectField(request, "object");
    env.oldObject = objectField(request, "oldObject");
    if (env.operation != constraints::ReviewOperation::Delete && !env.object)
        throw ParseError("request.object is required for " + toString(env.operation));
    return env;
}

json buildReview(const std::string& uid, bool allowed, const std::string& message,
                 const std::vector<std::string>& warnings, const json* patch = nullptr) {
    json response{{"uid", uid}, {"allowed", allowed}};
    if (!message.empty())
        response["status"] = json{{"message", message}};
    if (!warnings.empty())
        response["warnings"] = warnings;
    if (patch) {
        response["patch"] = *patch;
        response["patchType"] = "JSONPatch";
    }
    return json{{"apiVersion", "admission.k8s.io/v1"},
                {"kind", "AdmissionReview"},
                {"response", response}};
}

constraints::ObjectRef refOf(const manifest::ParsedManifest& object) {
    const constraints::ObjectView view = constraints::viewOf(object);
    return constraints::ObjectRef{view.kind, view.ns, view.name};
}

} // namespace

AdmissionService::AdmissionService(AdmissionConfig config, vault::VaultApi* vault)
    : config_(std::move(config)), vault_(vault) {
    if (config_.constraintsDir.empty())
        throw ValidationError("admission service needs a constraints directory");
    constraints_ = std::make_shared<const std::vector<constraints::Constraint>>(
        constraints::loadConstraintsDir(config_.constraintsDir,
                                        constraints::TemplateRegistry::builtin()));
    if (config_.stateFile)
        fixtureState_ = manifest::loadClusterState(*config_.stateFile);
}

AdmissionService::ConstraintSet AdmissionService::currentConstraints() const {
    std::lock_guard lock(mutex_);
    return constraints_;
}

std::size_t AdmissionService::constraintCount() const { return currentConstraints()->size(); }

std::size_t AdmissionService::reload() {
    auto fresh = std::make_shared<const std::vector<constraints::Constraint>>(
        constraints::loadConstraintsDir(config_.constraintsDir,
                                        constraints::TemplateRegistry::builtin()));
    std::lock_guard lock(mutex_);
    constraints_ = std::move(fresh);
    return constraints_->size();
}

void AdmissionService::trackDecision(const constraints::ReviewRequest& request, bool allowed) {
    if (!config_.trackAdmitted || !allowed)
        return;
    std::lock_guard lock(mutex_);
    if (request.operation == constraints::ReviewOperation::Delete) {
        const manifest::ParsedManifest* target =
            request.oldObject ? &*request.oldObject : (request.object ? &*request.object : nullptr);
        if (target)
            admitted_.erase(refOf(*target));
        return;
    }
    if (request.object)
        admitted_.insert_or_assign(refOf(*request.object), *request.object);
}

nlohmann::json AdmissionService::handleValidate(const nlohmann::json& review) {
    const Envelope env = parseEnvelope(review);
    const bool isDelete = env.operation == constraints::ReviewOperation::Delete;

    constraints::ReviewRequest request;
    request.operation = env.operation;
    try {
        if (env.object)
            request.object = manifest::manifestFromJson(*env.object);
        if (env.oldObject)
            request.oldObject = manifest::manifestFromJson(*env.oldObject);
    } catch (const Error& e) {
        if (isDelete)
            return buildReview(env.uid, true, "",
                               {std::string("deleted object could not be parsed: ") + e.what()});
        return buildReview(env.uid, false, std::string("object rejected: ") + e.what(), {});
    }
    if (isDelete && !request.object && !request.oldObject) {
        trackDecision(request, true);
        return buildReview(env.uid, true, "", {});
    }

    const ConstraintSet set = currentConstraints();
    const constraints::Decision decision = constraints::review(request, *set);

    std::string message;
    std::vector<std::string> warnings;
    for (const auto& v : decision.violations) {
        const std::string line = "[" + v.constraintName + "] " + v.message;
        switch (v.enforcementAction) {
        case constraints::EnforcementAction::Deny:
            if (isDelete) {
                warnings.push_back(line);
            } else {
                if (!message.empty())
                    message += "; ";
                message += line;
            }
            break;
        case constraints::EnforcementAction::Warn:
            warnings.push_back(line);
            break;
        case constraints::EnforcementAction::Dryrun:
            break;
        }
    }
    if (decision.allowed)
        message.clear();

    trackDecision(request, decision.allowed);
    return buildReview(env.uid, decision.allowed, message, warnings);
}

nlohmann::json AdmissionService::handleMutate(const nlohmann::json& review) {
    const Envelope env = parseEnvelope(review);
    if (env.operation == constraints::ReviewOperation::Delete)
        return buildReview(env.uid, true, "", {});

    manifest::ParsedManifest object;
    try {
        object = manifest::manifestFromJson(*env.object);
    } catch (const Error& e) {
        return buildReview(env.uid, false, std::string("object rejected: ") + e.what(), {});
    }

    const model::Pod* pod = std::get_if<model::Pod>(&object);
    if (!pod)
        return buildReview(env.uid, true, "", {});
    const auto annotation = pod->annotations.find(vault::kInjectAnnotation);
    if (annotation == pod->annotations.end() || annotation->second != "true")
        return buildReview(env.uid, true, "", {});

    std::string failure;
    if (!vault_) {
        failure = "no vault is configured for secret injection";
    } else {
        try {
            const vault::InjectResult result = vault::inject(*vault_, *pod, config_.injectConfig);
            json patch = json::array();
            for (const auto& op : result.patch)
                patch.push_back(op);
            return buildReview(env.uid, true, "", {}, &patch);
        } catch (const Error& e) {
            failure = e.what();
        }
    }
    if (config_.failOpen)
        return buildReview(env.uid, true, "", {"secret injection skipped: " + failure});
    return buildReview(env.uid, false, "secret injection failed: " + failure, {});
}

bool AdmissionService::hasAuditState() const {
    return fixtureState_.has_value() || config_.trackAdmitted;
}

model::ClusterState AdmissionService::auditState() const {
    model::ClusterState state = fixtureState_ ? *fixtureState_ : model::ClusterState{};
    {
        std::lock_guard lock(mutex_);
        for (const auto& [ref, object] : admitted_) {
            (void)ref;
            std::visit(
                [&state](const auto& o) {
                    using T = std::decay_t<decltype(o)>;
                    if constexpr (std::is_same_v<T, model::Pod>)
                        state.pods.push_back(o);
                    else if constexpr (std::is_same_v<T, model::WorkloadObject>)
                        state.objects.push_back(o);
                    else
                        state.networkPolicies.push_back(o);
                },
                object);
        }
    }
    auto ensureNamespace = [&state](const std::string& name) {
        if (name.empty() || state.findNamespace(name))
            return;
        model::NamespaceInfo info;
        info.name = name;
        info.labels["kubernetes.io/metadata.name"] = name;
        state.namespaces.push_back(std::move(info));
    };
    for (const auto& pod : state.pods)
        ensureNamespace(pod.ns);
    for (const auto& object : state.objects)
        ensureNamespace(object.ns);
    for (const auto& policy : state.networkPolicies)
        ensureNamespace(policy.ns);
    return state;
}

nlohmann::json AdmissionService::handleAudit() const {
    if (!hasAuditState())
        throw Error("no cluster state configured for audit");
    const ConstraintSet set = currentConstraints();
    return constraints::toJson(constraints::audit(auditState(), *set));
}

void AdmissionService::mount(httplib::Server& server) {
    auto handle = [this](const httplib::Request& req, httplib::Response& res,
                         json (AdmissionService::*handler)(const json&)) {
        json review = json::parse(req.body, nullptr, false);
        if (review.is_discarded()) {
            res.status = 400;
            res.set_content(json{{"error", "request body is not valid JSON"}}.dump(),
                            "application/json");
            return;
        }
        try {
            res.set_content((this->*handler)(review).dump(), "application/json");
        } catch (const ParseError& e) {
            res.status = 400;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        } catch (const std::exception& e) {
            res.status = 500;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        }
    };

    server.Post("/validate", [this, handle](const httplib::Request& req, httplib::Response& res) {
        handle(req, res, &AdmissionService::handleValidate);
    });
    server.Post("/mutate", [this, handle](const httplib::Request& req, httplib::Response& res) {
        handle(req, res, &AdmissionService::handleMutate);
    });

    server.Get("/audit", [this](const httplib::Request&, httplib::Response& res) {
        if (!hasAuditState()) {
            res.status = 409;
            res.set_content(
                json{{"error", "no cluster state configured; start with --state or "
                               "--track-admitted"}}
                    .dump(),
                "application/json");
            return;
        }
        try {
            res.set_content(handleAudit().dump(), "application/json");
        } catch (const std::exception& e) {
            res.status = 500;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        }
    });

    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ok", "text/plain");
    });

    server.Post("/-/reload", [this](const httplib::Request&, httplib::Response& res) {
        try {
            const std::size_t count = reload();
            res.set_content(json{{"status", "ok"}, {"constraints", count}}.dump(),
                            "application/json");
        } catch (const std::exception& e) {
            res.status = 500;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        }
    });
}

} // namespace clustergate::admission
