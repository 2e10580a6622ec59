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

#include "clustergate/vault/bootstrap.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "clustergate/errors.hpp"

namespace clustergate::vault {

SecretPlan planServiceSecrets(const std::string& ns, const std::string& service,
                              const std::string& directory, std::int64_t tokenTtlSeconds) {
    namespace fs = std::filesystem;
    validatePathSyntax(ns);
    validatePathSyntax(service);
    if (ns.find('/') != std::string::npos || service.find('/') != std::string::npos)
        throw VaultError(ErrorCode::InvalidRequest, "namespace and service must be single segments");
    if (!fs::is_directory(directory))
        throw VaultError(ErrorCode::InvalidRequest, "directory " + directory + " does not exist");

    SecretPlan plan;
    plan.mount = Vault::kDefaultMount;
    plan.path = ns + "/" + service + "-secrets";
    plan.fullPath = plan.mount + "/" + plan.path;

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory))
        if (entry.is_regular_file())
            files.push_back(entry.path());
    if (files.empty())
        throw VaultError(ErrorCode::InvalidRequest,
                         "directory " + directory + " contains no regular files");
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
        if (!in.good() && !in.eof())
            throw Error("failed reading " + file.string());
        const std::string key = file.filename().string();
        if (crypto::isValidUtf8(content))
            plan.data[key] = content;
        else
            plan.data["__binary:" + key] = crypto::base64Encode(content);
    }

    plan.policy.name = ns + "-" + service + "-read";
    plan.policy.rules.push_back(PolicyRule{plan.fullPath, {"read"}});

    plan.role.name = ns + "-" + service;
    plan.role.boundServiceAccounts = {service};
    plan.role.boundNamespaces = {ns};
    plan.role.policies = {plan.policy.name};
    plan.role.tokenTtlSeconds = tokenTtlSeconds;
    return plan;
}

CreateSecretsResult applySecretPlan(VaultApi& api, const std::string& token,
                                    const SecretPlan& plan) {
    CreateSecretsResult result;
    result.secretVersion = api.kvPut(token, plan.mount, plan.path, plan.data);
    api.policyWrite(token, plan.policy);
    api.roleWrite(token, plan.role);
    result.secretPath = plan.fullPath;
    result.policyName = plan.policy.name;
    result.roleName = plan.role.name;
    return result;
}

} // namespace clustergate::vault
