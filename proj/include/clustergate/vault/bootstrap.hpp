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

#include <string>

#include "clustergate/vault/api.hpp"
#include "clustergate/vault/core.hpp"

namespace clustergate::vault {

// Everything the secrets-from-directory workflow will write, computed
// without touching a vault: the secret data (file names as keys, contents as
// values, binary files base64-encoded under a "__binary:" key prefix), the
// exact-path read policy `<ns>-<service>-read`, and the role `<ns>-<service>`
// binding serviceAccount=<service> in <ns> to that policy.
struct SecretPlan {
    std::string mount;
    std::string path;     // "<ns>/<service>-secrets"
    std::string fullPath; // "<mount>/<path>"
    std::map<std::string, std::string> data;
    PolicyDoc policy;
    Role role;
};

SecretPlan planServiceSecrets(const std::string& ns, const std::string& service,
                              const std::string& directory, std::int64_t tokenTtlSeconds);

// Applies a plan through any vault API (in-process or HTTP): one kv put, one
// policy write, one role write. Policy and role writes are upserts, so
// reruns only advance the secret version.
CreateSecretsResult applySecretPlan(VaultApi& api, const std::string& token,
                                    const SecretPlan& plan);

} // namespace clustergate::vault
