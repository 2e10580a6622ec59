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
#include <string>
#include <vector>

#include <json.hpp>

#include "clustergate/model.hpp"
#include "clustergate/vault/api.hpp"

namespace clustergate::vault {

// Pod annotations driving injection.
inline constexpr const char* kInjectAnnotation = "vault.inject";
inline constexpr const char* kRoleAnnotation = "vault.role";
inline constexpr const char* kSecretPathAnnotation = "vault.secret-path";
inline constexpr const char* kTemplateAnnotationPrefix = "vault.template-";

struct InjectConfig {
    std::string agentImage = "registry.cern.ch/cmsweb/vault-agent:latest";
    std::string volumeName = "vault-secrets";
    std::string mountPath = "/vault/secrets";
};

struct InjectResult {
    bool injected = false;
    model::Pod mutatedPod;
    // filename -> content; binary secrets arrive decoded
    std::map<std::string, std::string> renderedFiles;
    // RFC-6902 operations turning toJson(original pod) into the mutated pod
    std::vector<nlohmann::json> patch;
};

// Pods without `vault.inject: "true"` come back unchanged. Annotated pods
// log in through the pod's (serviceAccount, namespace) against the annotated
// role, read the annotated secret path, render files (template annotations
// win; default is one file per key), and gain the agent sidecar plus a
// shared memory volume. Any vault failure throws before the pod is touched.
InjectResult inject(VaultApi& api, const model::Pod& pod, const InjectConfig& config = {});

// The sidecar added by inject; exposed so admission fixtures can assert
// against it. Mounts the shared volume at config.mountPath.
model::Container agentSidecar(const InjectConfig& config);

} // namespace clustergate::vault
