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

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clustergate/constraints.hpp"
#include "clustergate/manifest.hpp"
#include "clustergate/vault/api.hpp"
#include "clustergate/vault/inject.hpp"

namespace httplib {
class Server;
} // namespace httplib

namespace clustergate::admission {

struct AdmissionConfig {
    std::string constraintsDir; // required; loaded in the constructor
    // Cluster fixture for /audit; admitted objects stack on top when tracked.
    std::optional<std::string> stateFile;
    bool trackAdmitted = false;
    // Mutate path only: report injection failures as warnings instead of
    // denying. Validation always fails closed.
    bool failOpen = false;
    vault::InjectConfig injectConfig;
};

// The webhook pair plus the audit endpoint. Validation runs the constraint
// set against the reviewed object; mutation runs secret injection for
// annotated pods against the configured vault. Handlers take and return the
// AdmissionReview envelope; a malformed envelope throws ParseError (the HTTP
// layer turns that into 400), while an unparseable reviewed object denies.
class AdmissionService {
public:
    AdmissionService(AdmissionConfig config, vault::VaultApi* vault);

    nlohmann::json handleValidate(const nlohmann::json& review);
    nlohmann::json handleMutate(const nlohmann::json& review);

    bool hasAuditState() const;
    nlohmann::json handleAudit() const; // throws Error when no state is configured

    // Reloads the constraint directory; on failure the old set stays active
    // and the error propagates.
    std::size_t reload();
    std::size_t constraintCount() const;

    // Routes: POST /validate, POST /mutate, GET /audit, GET /healthz,
    // POST /-/reload. The server must outlive this service.
    void mount(httplib::Server& server);

private:
    using ConstraintSet = std::shared_ptr<const std::vector<constraints::Constraint>>;

    ConstraintSet currentConstraints() const;
    model::ClusterState auditState() const;
    void trackDecision(const constraints::ReviewRequest& request, bool allowed);

    AdmissionConfig config_;
    vault::VaultApi* vault_; // may be null; annotated pods then fail closed
    std::optional<model::ClusterState> fixtureState_;

    mutable std::mutex mutex_;
    ConstraintSet constraints_;
    std::map<constraints::ObjectRef, manifest::ParsedManifest> admitted_;
};

} // namespace clustergate::admission
