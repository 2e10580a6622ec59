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

#include <memory>
#include <string>

#include "clustergate/errors.hpp"
#include "clustergate/vault/api.hpp"

namespace httplib {
class Server;
class Client;
} // namespace httplib

namespace clustergate::vault {

// Registers the vault HTTP surface on an existing server:
//
//   POST /v1/sys/init                      {"secret_shares","secret_threshold"}
//   POST /v1/sys/unseal                    {"key","reset"?}
//   GET  /v1/sys/seal-status
//   PUT  /v1/sys/policies/<name>           {"rules":[{"path","capabilities"}]}
//   PUT  /v1/auth/kubernetes/role/<name>
//   POST /v1/auth/kubernetes/login         {"service_account","namespace","role"?}
//   GET  /v1/<mount>/data/<path>?version=N
//   POST /v1/<mount>/data/<path>           {"data":{...}}
//   POST /v1/<mount>/destroy/<path>        {"versions":[...]}
//
// Tokens travel in the X-Vault-Token header. Errors come back as
// {"errors":[message],"code":<machine name>} with the status the code maps to.
void mountVaultRoutes(httplib::Server& server, Vault& vault);

int httpStatusFor(ErrorCode code);
std::string errorCodeName(ErrorCode code);

// VaultApi over the HTTP surface above; every transport failure surfaces as
// VaultError(Unavailable). Lease accounting stays server side, so tokens
// returned from login carry only the id and policy list.
class HttpVaultClient final : public VaultApi {
public:
    explicit HttpVaultClient(const std::string& baseUrl);
    ~HttpVaultClient() override;

    SealStatus status() override;
    AuthToken login(const std::string& serviceAccount, const std::string& ns,
                    const std::optional<std::string>& roleName) override;
    SecretVersion kvGet(const std::string& token, const std::string& mount,
                        const std::string& path,
                        std::optional<int> version = std::nullopt) override;
    int kvPut(const std::string& token, const std::string& mount, const std::string& path,
              const std::map<std::string, std::string>& data) override;
    void policyWrite(const std::string& token, const PolicyDoc& doc) override;
    void roleWrite(const std::string& token, const Role& role) override;

    // Beyond VaultApi: the remaining CLI-facing calls.
    InitResult init(int shares, int threshold);
    SealStatus unseal(const std::string& shareHex, bool reset = false);

private:
    std::unique_ptr<httplib::Client> http_;
};

} // namespace clustergate::vault
