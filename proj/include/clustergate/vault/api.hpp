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
#include <optional>
#include <string>

#include "clustergate/vault/core.hpp"

namespace clustergate::vault {

// The vault capabilities consumers (injector, admission service, CLI) need,
// satisfiable in-process or over HTTP. All methods throw VaultError.
class VaultApi {
public:
    virtual ~VaultApi() = default;

    virtual SealStatus status() = 0;
    virtual AuthToken login(const std::string& serviceAccount, const std::string& ns,
                            const std::optional<std::string>& roleName) = 0;
    virtual SecretVersion kvGet(const std::string& token, const std::string& mount,
                                const std::string& path,
                                std::optional<int> version = std::nullopt) = 0;
    virtual int kvPut(const std::string& token, const std::string& mount,
                      const std::string& path,
                      const std::map<std::string, std::string>& data) = 0;
    virtual void policyWrite(const std::string& token, const PolicyDoc& doc) = 0;
    virtual void roleWrite(const std::string& token, const Role& role) = 0;
};

class InProcessVaultApi final : public VaultApi {
public:
    explicit InProcessVaultApi(Vault& vault) : vault_(vault) {}

    SealStatus status() override { return vault_.status(); }

    AuthToken login(const std::string& serviceAccount, const std::string& ns,
                    const std::optional<std::string>& roleName) override {
        return vault_.login(serviceAccount, ns, roleName);
    }

    SecretVersion kvGet(const std::string& token, const std::string& mount,
                        const std::string& path, std::optional<int> version) override {
        return vault_.kvGet(token, mount, path, version);
    }

    int kvPut(const std::string& token, const std::string& mount, const std::string& path,
              const std::map<std::string, std::string>& data) override {
        return vault_.kvPut(token, mount, path, data);
    }

    void policyWrite(const std::string& token, const PolicyDoc& doc) override {
        vault_.policyWrite(token, doc);
    }

    void roleWrite(const std::string& token, const Role& role) override {
        vault_.roleWrite(token, role);
    }

private:
    Vault& vault_;
};

} // namespace clustergate::vault
