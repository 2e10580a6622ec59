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

#include "clustergate/vault/core.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

#include "clustergate/errors.hpp"
#include "clustergate/vault/bootstrap.hpp"
#include "clustergate/vault/shamir.hpp"

namespace clustergate::vault {

using nlohmann::json;

namespace {

constexpr const char* kSentinelPlain = "clustergate vault sentinel v1";
constexpr const char* kSentinelAad = "sentinel";
constexpr const char* kRecordAad = "record";

std::int64_t systemNowMs() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::vector<std::uint8_t> toBytes(const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

} // namespace

void validatePathSyntax(const std::string& path, bool allowWildcard) {
    if (path.empty())
        throw VaultError(ErrorCode::InvalidRequest, "empty path");
    std::size_t start = 0;
    while (start <= path.size()) {
        std::size_t slash = path.find('/', start);
        const std::string segment =
            slash == std::string::npos ? path.substr(start) : path.substr(start, slash - start);
        if (segment.empty())
            throw VaultError(ErrorCode::InvalidRequest,
                             "path \"" + path + "\" has an empty segment");
        if (!(allowWildcard && segment == "*")) {
            for (char c : segment) {
                const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                                (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
                if (!ok)
                    throw VaultError(ErrorCode::InvalidRequest,
                                     "path \"" + path + "\" contains invalid character");
            }
        }
        if (slash == std::string::npos)
            break;
        start = slash + 1;
    }
}

Vault::Vault(std::string storagePath, Clock clock)
    : storagePath_(std::move(storagePath)), clock_(clock ? std::move(clock) : systemNowMs) {
    if (StorageFile::exists(storagePath_)) {
        file_ = std::make_unique<StorageFile>(storagePath_);
        shares_ = file_->header().shares;
        threshold_ = file_->header().threshold;
    }
}

SealStatus Vault::status() const {
    std::shared_lock lock(rw_);
    SealStatus s;
    s.initialized = file_ != nullptr;
    s.sealed = sealed_;
    s.shares = shares_;
    s.threshold = threshold_;
    s.progress = static_cast<int>(unsealProgress_.size());
    return s;
}

void Vault::audit(const std::string& token, const std::string& operation,
                  const std::string& path, const std::string& outcome) {
    AuditRecord record;
    record.timestampMs = now();
    record.tokenDigest = token.empty() ? "" : crypto::sha256Hex(token);
    record.operation = operation;
    record.path = path;
    record.outcome = outcome;
    std::lock_guard guard(auditMutex_);
    audit_.push_back(std::move(record));
}

std::vector<AuditRecord> Vault::auditLog() const {
    std::lock_guard guard(auditMutex_);
    return audit_;
}

void Vault::requireUnsealedLocked() const {
    if (!file_)
        throw VaultError(ErrorCode::NotInitialized, "vault is not initialized");
    if (sealed_)
        throw VaultError(ErrorCode::Sealed, "vault is sealed");
}

const AuthToken& Vault::requireTokenLocked(const std::string& token) const {
    auto it = tokens_.find(token);
    if (it == tokens_.end())
        throw VaultError(ErrorCode::PermissionDenied, "invalid token");
    const AuthToken& t = it->second;
    if (t.expiresAtMs != 0 && now() >= t.expiresAtMs)
        throw VaultError(ErrorCode::PermissionDenied, "token expired");
    return t;
}

bool Vault::tokenAllowsLocked(const AuthToken& token, const std::string& capability,
                              const std::string& path) const {
    if (token.root)
        return true;
    for (const auto& name : token.policies) {
        auto it = policies_.find(name);
        if (it != policies_.end() && policyAllows(it->second, capability, path))
            return true;
    }
    return false;
}

void Vault::requireCapabilityLocked(const std::string& token, const std::string& capability,
                                    const std::string& path) const {
    const AuthToken& t = requireTokenLocked(token);
    if (!tokenAllowsLocked(t, capability, path))
        throw VaultError(ErrorCode::PermissionDenied,
                         "token lacks " + capability + " capability on " + path);
}

bool Vault::checkAccess(const std::string& token, const std::string& capability,
                        const std::string& path) const {
    std::shared_lock lock(rw_);
    if (!file_ || sealed_)
        return false;
    auto it = tokens_.find(token);
    if (it == tokens_.end())
        return false;
    if (it->second.expiresAtMs != 0 && now() >= it->second.expiresAtMs)
        return false;
    return tokenAllowsLocked(it->second, capability, path);
}

void Vault::appendRecord(const json& payload) {
    const crypto::Nonce nonce = crypto::nonceFromCounter(nonceCounter_);
    const auto sealedBytes = crypto::aeadSeal(masterKey_, nonce, toBytes(payload.dump()),
                                              kRecordAad);
    file_->append(StorageRecord{nonce, sealedBytes});
    ++nonceCounter_;
}

void Vault::applyRecord(const json& payload) {
    const std::string type = payload.at("t").get<std::string>();
    if (type == "kv") {
        const std::string full = payload.at("mount").get<std::string>() + "/" +
                                 payload.at("path").get<std::string>();
        KVEntry& entry = kv_[full];
        const int version = payload.at("ver").get<int>();
        if (version != static_cast<int>(entry.versions.size()) + 1)
            throw VaultError(ErrorCode::Corrupt,
                             "secret " + full + " has out-of-order version records");
        SecretVersion sv;
        sv.meta.version = version;
        sv.meta.createdAtMs = payload.at("ts").get<std::int64_t>();
        for (const auto& [key, value] : payload.at("data").items())
            sv.data[key] = value.get<std::string>();
        entry.versions.push_back(std::move(sv));
    } else if (type == "kv_destroy") {
        const std::string full = payload.at("mount").get<std::string>() + "/" +
                                 payload.at("path").get<std::string>();
        auto it = kv_.find(full);
        const int version = payload.at("ver").get<int>();
        if (it == kv_.end() || version < 1 ||
            version > static_cast<int>(it->second.versions.size()))
            throw VaultError(ErrorCode::Corrupt,
                             "destroy record references unknown version of " + full);
        auto& sv = it->second.versions[version - 1];
        sv.data.clear();
        sv.meta.destroyed = true;
    } else if (type == "policy") {
        PolicyDoc doc;
        doc.name = payload.at("name").get<std::string>();
        for (const auto& r : payload.at("rules")) {
            PolicyRule rule;
            rule.pathPattern = r.at("path").get<std::string>();
            for (const auto& cap : r.at("caps"))
                rule.capabilities.insert(cap.get<std::string>());
            doc.rules.push_back(std::move(rule));
        }
        if (payload.contains("rateLimitPerDay"))
            doc.rateLimitPerDay = payload.at("rateLimitPerDay").get<std::int64_t>();
        policies_[doc.name] = std::move(doc);
    } else if (type == "role") {
        Role role;
        role.name = payload.at("name").get<std::string>();
        role.boundServiceAccounts =
            payload.at("sas").get<std::vector<std::string>>();
        role.boundNamespaces = payload.at("nss").get<std::vector<std::string>>();
        role.policies = payload.at("policies").get<std::vector<std::string>>();
        role.tokenTtlSeconds = payload.at("ttl").get<std::int64_t>();
        roles_[role.name] = std::move(role);
    } else if (type == "token") {
        AuthToken token;
        token.id = payload.at("id").get<std::string>();
        token.policies = payload.at("policies").get<std::vector<std::string>>();
        token.issuedAtMs = payload.at("iat").get<std::int64_t>();
        token.expiresAtMs = payload.at("exp").get<std::int64_t>();
        token.root = payload.at("root").get<bool>();
        tokens_[token.id] = std::move(token);
    } else {
        throw VaultError(ErrorCode::Corrupt, "unknown record type \"" + type + "\"");
    }
}

void Vault::rebuildFromStorage() {
    kv_.clear();
    policies_.clear();
    roles_.clear();
    tokens_.clear();
    std::uint64_t lastCounter = 0;
    for (const auto& record : file_->readAll()) {
        const auto plain = crypto::aeadOpen(masterKey_, record.nonce, record.ciphertext,
                                            kRecordAad);
        if (!plain)
            throw VaultError(ErrorCode::Corrupt, "storage record fails authentication");
        json payload;
        try {
            payload = json::parse(plain->begin(), plain->end());
        } catch (const json::exception&) {
            throw VaultError(ErrorCode::Corrupt, "storage record is not valid JSON");
        }
        try {
            applyRecord(payload);
        } catch (const json::exception&) {
            throw VaultError(ErrorCode::Corrupt, "storage record has missing fields");
        }
        lastCounter = crypto::counterFromNonce(record.nonce);
    }
    nonceCounter_ = lastCounter + 1;
}

void Vault::wipeLocked() {
    masterKey_.fill(0);
    sealed_ = true;
    unsealProgress_.clear();
    kv_.clear();
    policies_.clear();
    roles_.clear();
    tokens_.clear();
}

InitResult Vault::init(int shares, int threshold) {
    std::unique_lock lock(rw_);
    try {
        if (file_)
            throw VaultError(ErrorCode::AlreadyInitialized, "vault is already initialized");
        if (threshold < 1 || shares < threshold || shares > 255)
            throw VaultError(ErrorCode::InvalidRequest,
                             "share parameters must satisfy 1 <= threshold <= shares <= 255");

        const auto keyBytes = crypto::randomBytes(crypto::kKeyBytes);
        std::copy(keyBytes.begin(), keyBytes.end(), masterKey_.begin());

        StorageHeader header;
        header.shares = shares;
        header.threshold = threshold;
        header.sentinelNonce = crypto::nonceFromCounter(0);
        header.sentinelCiphertext = crypto::aeadSeal(masterKey_, header.sentinelNonce,
                                                     toBytes(kSentinelPlain), kSentinelAad);
        StorageFile::create(storagePath_, header);
        file_ = std::make_unique<StorageFile>(storagePath_);
        shares_ = shares;
        threshold_ = threshold;
        nonceCounter_ = 1;

        AuthToken root;
        root.id = crypto::toHex(crypto::randomBytes(16));
        root.policies = {"root"};
        root.issuedAtMs = now();
        root.expiresAtMs = 0;
        root.root = true;
        appendRecord(json{{"t", "token"},
                          {"id", root.id},
                          {"policies", root.policies},
                          {"iat", root.issuedAtMs},
                          {"exp", root.expiresAtMs},
                          {"root", true}});

        InitResult result;
        result.rootToken = root.id;
        for (const auto& share : splitSecret(keyBytes, shares, threshold))
            result.shares.push_back(crypto::toHex(share));

        // The vault starts sealed; the key lives only in the returned shares.
        wipeLocked();
        audit("", "init", "sys/init", "allow");
        return result;
    } catch (const VaultError& e) {
        audit("", "init", "sys/init", "error");
        throw;
    }
}

SealStatus Vault::unseal(const std::string& shareHex, bool reset) {
    std::unique_lock lock(rw_);
    auto statusLocked = [&] {
        SealStatus s;
        s.initialized = file_ != nullptr;
        s.sealed = sealed_;
        s.shares = shares_;
        s.threshold = threshold_;
        s.progress = static_cast<int>(unsealProgress_.size());
        return s;
    };
    try {
        if (!file_)
            throw VaultError(ErrorCode::NotInitialized, "vault is not initialized");
        if (reset)
            unsealProgress_.clear();
        if (!sealed_) {
            audit("", "unseal", "sys/unseal", "allow");
            return statusLocked();
        }
        if (reset && shareHex.empty()) {
            audit("", "unseal", "sys/unseal", "allow");
            return statusLocked();
        }

        std::vector<std::uint8_t> share;
        try {
            share = crypto::fromHex(shareHex);
        } catch (const ParseError&) {
            throw VaultError(ErrorCode::InvalidShare, "share is not valid hex");
        }
        if (share.size() != crypto::kKeyBytes + 1)
            throw VaultError(ErrorCode::InvalidShare, "share has wrong length");
        if (share[0] == 0 || share[0] > shares_)
            throw VaultError(ErrorCode::InvalidShare, "share index out of range");
        if (unsealProgress_.count(share[0]))
            throw VaultError(ErrorCode::InvalidShare, "duplicate share submitted");
        unsealProgress_[share[0]] = share;

        if (static_cast<int>(unsealProgress_.size()) < threshold_) {
            audit("", "unseal", "sys/unseal", "allow");
            return statusLocked();
        }

        std::vector<std::vector<std::uint8_t>> collected;
        for (const auto& [index, bytes] : unsealProgress_) {
            (void)index;
            collected.push_back(bytes);
        }
        const auto keyBytes = combineShares(collected);
        unsealProgress_.clear();
        crypto::Key candidate{};
        std::copy(keyBytes.begin(), keyBytes.end(), candidate.begin());
        const auto sentinel = crypto::aeadOpen(candidate, file_->header().sentinelNonce,
                                               file_->header().sentinelCiphertext, kSentinelAad);
        if (!sentinel || std::string(sentinel->begin(), sentinel->end()) != kSentinelPlain)
            throw VaultError(ErrorCode::InvalidShare,
                             "submitted shares do not reconstruct the master key");
        masterKey_ = candidate;
        try {
            rebuildFromStorage();
        } catch (const VaultError&) {
            wipeLocked();
            throw;
        }
        sealed_ = false;
        audit("", "unseal", "sys/unseal", "allow");
        return statusLocked();
    } catch (const VaultError&) {
        audit("", "unseal", "sys/unseal", "error");
        throw;
    }
}

void Vault::seal() {
    std::unique_lock lock(rw_);
    if (!file_) {
        audit("", "seal", "sys/seal", "error");
        throw VaultError(ErrorCode::NotInitialized, "vault is not initialized");
    }
    wipeLocked();
    audit("", "seal", "sys/seal", "allow");
}

int Vault::kvPutLocked(const std::string& mount, const std::string& path,
                       const std::map<std::string, std::string>& data, bool persist) {
    validatePathSyntax(mount);
    validatePathSyntax(path);
    if (data.empty())
        throw VaultError(ErrorCode::InvalidRequest, "secret data must not be empty");
    for (const auto& [key, value] : data) {
        if (key.empty() || key.find('/') != std::string::npos)
            throw VaultError(ErrorCode::InvalidRequest, "invalid secret key \"" + key + "\"");
        if (!crypto::isValidUtf8(key) || !crypto::isValidUtf8(value))
            throw VaultError(ErrorCode::InvalidRequest,
                             "secret entries must be UTF-8; store binary data base64-encoded "
                             "under a __binary: key");
    }
    const std::string full = mount + "/" + path;
    KVEntry& entry = kv_[full];
    SecretVersion sv;
    sv.data = data;
    sv.meta.version = static_cast<int>(entry.versions.size()) + 1;
    sv.meta.createdAtMs = now();
    if (persist)
        appendRecord(json{{"t", "kv"},
                          {"mount", mount},
                          {"path", path},
                          {"ver", sv.meta.version},
                          {"data", data},
                          {"ts", sv.meta.createdAtMs}});
    entry.versions.push_back(std::move(sv));
    return static_cast<int>(entry.versions.size());
}

int Vault::kvPut(const std::string& token, const std::string& mount, const std::string& path,
                 const std::map<std::string, std::string>& data) {
    std::unique_lock lock(rw_);
    const std::string full = mount + "/" + path;
    try {
        requireUnsealedLocked();
        requireCapabilityLocked(token, kv_.count(full) ? "update" : "create", full);
        const int version = kvPutLocked(mount, path, data, /*persist=*/true);
        audit(token, "kv.put", full, "allow");
        return version;
    } catch (const VaultError& e) {
        audit(token, "kv.put", full,
              e.code() == ErrorCode::PermissionDenied ? "deny" : "error");
        throw;
    }
}

SecretVersion Vault::kvGet(const std::string& token, const std::string& mount,
                           const std::string& path, std::optional<int> version) {
    std::shared_lock lock(rw_);
    const std::string full = mount + "/" + path;
    try {
        requireUnsealedLocked();
        requireCapabilityLocked(token, "read", full);
        auto it = kv_.find(full);
        if (it == kv_.end() || it->second.versions.empty())
            throw VaultError(ErrorCode::NotFound, "no secret at " + full);
        const auto& versions = it->second.versions;
        const SecretVersion* found = nullptr;
        if (version) {
            if (*version < 1 || *version > static_cast<int>(versions.size()))
                throw VaultError(ErrorCode::NotFound,
                                 "secret " + full + " has no version " + std::to_string(*version));
            found = &versions[*version - 1];
            if (found->meta.destroyed)
                throw VaultError(ErrorCode::NotFound, "version " + std::to_string(*version) +
                                                          " of " + full + " is destroyed");
        } else {
            for (auto rit = versions.rbegin(); rit != versions.rend(); ++rit) {
                if (!rit->meta.destroyed) {
                    found = &*rit;
                    break;
                }
            }
            if (!found)
                throw VaultError(ErrorCode::NotFound,
                                 "every version of " + full + " is destroyed");
        }
        audit(token, "kv.get", full, "allow");
        return *found;
    } catch (const VaultError& e) {
        audit(token, "kv.get", full,
              e.code() == ErrorCode::PermissionDenied ? "deny" : "error");
        throw;
    }
}

void Vault::kvDestroy(const std::string& token, const std::string& mount,
                      const std::string& path, int version) {
    std::unique_lock lock(rw_);
    const std::string full = mount + "/" + path;
    try {
        requireUnsealedLocked();
        requireCapabilityLocked(token, "delete", full);
        auto it = kv_.find(full);
        if (it == kv_.end() || version < 1 ||
            version > static_cast<int>(it->second.versions.size()))
            throw VaultError(ErrorCode::NotFound,
                             "secret " + full + " has no version " + std::to_string(version));
        auto& sv = it->second.versions[version - 1];
        if (!sv.meta.destroyed) {
            appendRecord(json{{"t", "kv_destroy"},
                              {"mount", mount},
                              {"path", path},
                              {"ver", version},
                              {"ts", now()}});
            sv.data.clear();
            sv.meta.destroyed = true;
        }
        audit(token, "kv.destroy", full, "allow");
    } catch (const VaultError& e) {
        audit(token, "kv.destroy", full,
              e.code() == ErrorCode::PermissionDenied ? "deny" : "error");
        throw;
    }
}

void Vault::policyWriteLocked(const PolicyDoc& doc, bool persist) {
    validatePolicyDoc(doc);
    for (const auto& rule : doc.rules)
        validatePathSyntax(rule.pathPattern, /*allowWildcard=*/true);
    if (persist) {
        json rules = json::array();
        for (const auto& rule : doc.rules) {
            json caps = json::array();
            for (const auto& cap : rule.capabilities)
                caps.push_back(cap);
            rules.push_back(json{{"path", rule.pathPattern}, {"caps", caps}});
        }
        json payload{{"t", "policy"}, {"name", doc.name}, {"rules", rules}};
        if (doc.rateLimitPerDay)
            payload["rateLimitPerDay"] = *doc.rateLimitPerDay;
        appendRecord(payload);
    }
    policies_[doc.name] = doc;
}

void Vault::policyWrite(const std::string& token, const PolicyDoc& doc) {
    std::unique_lock lock(rw_);
    const std::string sysPath = "sys/policies/" + doc.name;
    try {
        requireUnsealedLocked();
        requireCapabilityLocked(token, "update", sysPath);
        policyWriteLocked(doc, /*persist=*/true);
        audit(token, "policy.write", sysPath, "allow");
    } catch (const VaultError& e) {
        audit(token, "policy.write", sysPath,
              e.code() == ErrorCode::PermissionDenied ? "deny" : "error");
        throw;
    } catch (const ValidationError& e) {
        audit(token, "policy.write", sysPath, "error");
        throw VaultError(ErrorCode::InvalidRequest, e.what());
    }
}

std::optional<PolicyDoc> Vault::policyRead(const std::string& token, const std::string& name) {
    std::shared_lock lock(rw_);
    const std::string sysPath = "sys/policies/" + name;
    try {
        requireUnsealedLocked();
        requireCapabilityLocked(token, "read", sysPath);
        audit(token, "policy.read", sysPath, "allow");
        auto it = policies_.find(name);
        if (it == policies_.end())
            return std::nullopt;
        return it->second;
    } catch (const VaultError& e) {
        audit(token, "policy.read", sysPath,
              e.code() == ErrorCode::PermissionDenied ? "deny" : "error");
        throw;
    }
}

void Vault::roleWriteLocked(const Role& role, bool persist) {
    if (role.name.empty())
        throw VaultError(ErrorCode::InvalidRequest, "role has no name");
    if (role.boundServiceAccounts.empty() || role.boundNamespaces.empty())
        throw VaultError(ErrorCode::InvalidRequest,
                         "role \"" + role.name + "\" must bind at least one service account "
                         "and one namespace");
    if (role.tokenTtlSeconds < 0)
        throw VaultError(ErrorCode::InvalidRequest, "role TTL must not be negative");
    if (persist)
        appendRecord(json{{"t", "role"},
                          {"name", role.name},
                          {"sas", role.boundServiceAccounts},
                          {"nss", role.boundNamespaces},
                          {"policies", role.policies},
                          {"ttl", role.tokenTtlSeconds}});
    roles_[role.name] = role;
}

void Vault::roleWrite(const std::string& token, const Role& role) {
    std::unique_lock lock(rw_);
    const std::string sysPath = "sys/roles/" + role.name;
    try {
        requireUnsealedLocked();
        requireCapabilityLocked(token, "update", sysPath);
        roleWriteLocked(role, /*persist=*/true);
        audit(token, "role.write", sysPath, "allow");
    } catch (const VaultError& e) {
        audit(token, "role.write", sysPath,
              e.code() == ErrorCode::PermissionDenied ? "deny" : "error");
        throw;
    }
}

AuthToken Vault::login(const std::string& serviceAccount, const std::string& ns,
                       const std::optional<std::string>& roleName) {
    std::unique_lock lock(rw_);
    const std::string path = "auth/kubernetes/login";
    try {
        requireUnsealedLocked();
        const Role* role = nullptr;
        auto binds = [&](const Role& r) {
            return std::find(r.boundServiceAccounts.begin(), r.boundServiceAccounts.end(),
                             serviceAccount) != r.boundServiceAccounts.end() &&
                   std::find(r.boundNamespaces.begin(), r.boundNamespaces.end(), ns) !=
                       r.boundNamespaces.end();
        };
        if (roleName) {
            auto it = roles_.find(*roleName);
            if (it == roles_.end())
                throw VaultError(ErrorCode::AuthFailed, "role \"" + *roleName + "\" not found");
            if (!binds(it->second))
                throw VaultError(ErrorCode::AuthFailed,
                                 "role \"" + *roleName + "\" does not bind service account " +
                                     serviceAccount + " in namespace " + ns);
            role = &it->second;
        } else {
            for (const auto& [name, r] : roles_) {
                (void)name;
                if (binds(r)) {
                    role = &r;
                    break;
                }
            }
            if (!role)
                throw VaultError(ErrorCode::AuthFailed,
                                 "no role binds service account " + serviceAccount +
                                     " in namespace " + ns);
        }
        for (const auto& policy : role->policies)
            if (!policies_.count(policy))
                throw VaultError(ErrorCode::AuthFailed,
                                 "role \"" + role->name + "\" references unknown policy \"" +
                                     policy + "\"");
        AuthToken token;
        token.id = crypto::toHex(crypto::randomBytes(16));
        token.policies = role->policies;
        token.issuedAtMs = now();
        token.expiresAtMs =
            role->tokenTtlSeconds > 0 ? token.issuedAtMs + role->tokenTtlSeconds * 1000 : 0;
        token.root = false;
        appendRecord(json{{"t", "token"},
                          {"id", token.id},
                          {"policies", token.policies},
                          {"iat", token.issuedAtMs},
                          {"exp", token.expiresAtMs},
                          {"root", false}});
        tokens_[token.id] = token;
        audit(token.id, "login", path, "allow");
        return token;
    } catch (const VaultError& e) {
        audit("", "login", path, e.code() == ErrorCode::AuthFailed ? "deny" : "error");
        throw;
    }
}

CreateSecretsResult Vault::createSecretsFromDir(const std::string& token, const std::string& ns,
                                                const std::string& service,
                                                const std::string& directory,
                                                std::int64_t tokenTtlSeconds) {
    std::unique_lock lock(rw_);
    const std::string opPath =
        std::string(kDefaultMount) + "/" + ns + "/" + service + "-secrets";
    try {
        requireUnsealedLocked();
        const SecretPlan plan = planServiceSecrets(ns, service, directory, tokenTtlSeconds);
        requireCapabilityLocked(token, kv_.count(plan.fullPath) ? "update" : "create",
                                plan.fullPath);
        requireCapabilityLocked(token, "update", "sys/policies/" + plan.policy.name);
        requireCapabilityLocked(token, "update", "sys/roles/" + plan.role.name);

        CreateSecretsResult result;
        result.secretVersion = kvPutLocked(plan.mount, plan.path, plan.data, /*persist=*/true);
        policyWriteLocked(plan.policy, /*persist=*/true);
        roleWriteLocked(plan.role, /*persist=*/true);
        result.secretPath = plan.fullPath;
        result.policyName = plan.policy.name;
        result.roleName = plan.role.name;
        audit(token, "create-secrets", plan.fullPath, "allow");
        return result;
    } catch (const VaultError& e) {
        audit(token, "create-secrets", opPath,
              e.code() == ErrorCode::PermissionDenied ? "deny" : "error");
        throw;
    } catch (const Error&) {
        audit(token, "create-secrets", opPath, "error");
        throw;
    }
}

} // namespace clustergate::vault
