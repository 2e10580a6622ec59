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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "clustergate/vault/acl.hpp"
#include "clustergate/vault/crypto.hpp"
#include "clustergate/vault/storage.hpp"

namespace clustergate::vault {

struct SealStatus {
    bool initialized = false;
    bool sealed = true;
    int shares = 0;
    int threshold = 0;
    int progress = 0;
};

struct InitResult {
    std::vector<std::string> shares; // hex of [index byte || 32 key bytes]
    std::string rootToken;
};

struct VersionMeta {
    int version = 0;
    std::int64_t createdAtMs = 0;
    bool destroyed = false;
};

struct SecretVersion {
    std::map<std::string, std::string> data;
    VersionMeta meta;
};

struct Role {
    std::string name;
    std::vector<std::string> boundServiceAccounts; // non-empty
    std::vector<std::string> boundNamespaces;      // non-empty
    std::vector<std::string> policies;
    std::int64_t tokenTtlSeconds = 3600; // 0 = tokens never expire

    bool operator==(const Role&) const = default;
};

struct AuthToken {
    std::string id; // 32 hex chars (128-bit)
    std::vector<std::string> policies;
    std::int64_t issuedAtMs = 0;
    std::int64_t expiresAtMs = 0; // 0 = never
    bool root = false;
};

struct AuditRecord {
    std::int64_t timestampMs = 0;
    std::string tokenDigest; // SHA-256 hex of the token id, never the id
    std::string operation;
    std::string path;
    std::string outcome; // allow | deny | error
};

struct CreateSecretsResult {
    std::string secretPath;
    std::string policyName;
    std::string roleName;
    int secretVersion = 0;
};

// Sealed-by-default secrets store backed by one append-only encrypted file.
// The master key exists only in memory while unsealed; every public
// operation except status() appends exactly one audit record, including
// denials. One writer at a time; reads run concurrently.
class Vault {
public:
    using Clock = std::function<std::int64_t()>; // epoch milliseconds

    explicit Vault(std::string storagePath, Clock clock = nullptr);

    SealStatus status() const;

    // Generates the master key, persists header + sentinel + root token, and
    // leaves the vault sealed. Shares are returned once and never stored.
    InitResult init(int shares, int threshold);

    // Accumulates distinct valid shares; reset drops progress first. On
    // reaching the threshold the key is reconstructed and checked against
    // the sentinel; a failed check re-seals progress and throws InvalidShare.
    SealStatus unseal(const std::string& shareHex, bool reset = false);

    void seal();

    int kvPut(const std::string& token, const std::string& mount, const std::string& path,
              const std::map<std::string, std::string>& data);
    SecretVersion kvGet(const std::string& token, const std::string& mount,
                        const std::string& path, std::optional<int> version = std::nullopt);
    void kvDestroy(const std::string& token, const std::string& mount, const std::string& path,
                   int version);

    void policyWrite(const std::string& token, const PolicyDoc& doc);
    std::optional<PolicyDoc> policyRead(const std::string& token, const std::string& name);
    void roleWrite(const std::string& token, const Role& role);

    // Authenticates an asserted (serviceAccount, namespace) pair; the caller
    // is the trusted admission layer, JWT verification is out of scope. When
    // roleName is given the named role must bind the pair; otherwise the
    // first binding role in name order wins.
    AuthToken login(const std::string& serviceAccount, const std::string& ns,
                    const std::optional<std::string>& roleName = std::nullopt);

    // The secrets-from-directory workflow: stores one secret at
    // cmsweb/<ns>/<service>-secrets with file names as keys, writes an
    // exact-path read policy <ns>-<service>-read, and upserts role
    // <ns>-<service> binding (service, ns) to it. Counts as one operation.
    CreateSecretsResult createSecretsFromDir(const std::string& token, const std::string& ns,
                                             const std::string& service,
                                             const std::string& directory,
                                             std::int64_t tokenTtlSeconds = 3600);

    // True iff the token is live and some attached policy grants
    // `capability` on `path` (root bypasses). Does not audit.
    bool checkAccess(const std::string& token, const std::string& capability,
                     const std::string& path) const;

    std::vector<AuditRecord> auditLog() const;

    static constexpr const char* kDefaultMount = "cmsweb";

private:
    struct KVEntry {
        std::vector<SecretVersion> versions; // index i holds version i+1
    };

    std::int64_t now() const { return clock_(); }

    void requireUnsealedLocked() const;
    const AuthToken& requireTokenLocked(const std::string& token) const;
    void requireCapabilityLocked(const std::string& token, const std::string& capability,
                                 const std::string& path) const;
    bool tokenAllowsLocked(const AuthToken& token, const std::string& capability,
                           const std::string& path) const;

    void appendRecord(const nlohmann::json& payload);
    void applyRecord(const nlohmann::json& payload);
    void rebuildFromStorage();
    void wipeLocked();

    void audit(const std::string& token, const std::string& operation, const std::string& path,
               const std::string& outcome);

    int kvPutLocked(const std::string& mount, const std::string& path,
                    const std::map<std::string, std::string>& data, bool persist);
    void policyWriteLocked(const PolicyDoc& doc, bool persist);
    void roleWriteLocked(const Role& role, bool persist);

    std::string storagePath_;
    Clock clock_;

    mutable std::shared_mutex rw_;
    std::unique_ptr<StorageFile> file_; // null until initialized
    bool sealed_ = true;
    int shares_ = 0;
    int threshold_ = 0;
    std::map<std::uint8_t, std::vector<std::uint8_t>> unsealProgress_; // by share index
    crypto::Key masterKey_{};
    std::uint64_t nonceCounter_ = 1; // 0 belongs to the sentinel

    std::map<std::string, KVEntry> kv_; // key: "<mount>/<path>"
    std::map<std::string, PolicyDoc> policies_;
    std::map<std::string, Role> roles_;
    std::map<std::string, AuthToken> tokens_;

    mutable std::mutex auditMutex_;
    std::vector<AuditRecord> audit_;
};

// Path syntax shared by mounts, KV paths and policy patterns: slash-separated
// segments of [A-Za-z0-9_.-] (a pattern segment may also be "*").
void validatePathSyntax(const std::string& path, bool allowWildcard = false);

} // namespace clustergate::vault
