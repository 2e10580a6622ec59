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

#include "clustergate/vault/http.hpp"

#include <charconv>
#include <cstdio>
#include <ctime>
#include <string>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "clustergate/errors.hpp"

namespace clustergate::vault {
namespace {

using nlohmann::json;

std::string formatTimestampMs(std::int64_t ms) {
    std::time_t secs = static_cast<std::time_t>(ms / 1000);
    int frac = static_cast<int>(ms % 1000);
    if (frac < 0) {
        frac += 1000;
        secs -= 1;
    }
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, frac);
    return buf;
}

std::int64_t parseTimestampMs(const std::string& text) {
    std::tm tm{};
    int frac = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3dZ", &tm.tm_year, &tm.tm_mon,
                    &tm.tm_mday, &tm.tm_hour, &tm.tm_min, &tm.tm_sec, &frac) != 7)
        throw ParseError("malformed timestamp: " + text);
    tm.tm_year -= 1900;
    tm.tm_mon -= 1;
    return static_cast<std::int64_t>(timegm(&tm)) * 1000 + frac;
}

json sealStatusToJson(const SealStatus& s) {
    return json{{"initialized", s.initialized},
                {"sealed", s.sealed},
                {"t", s.threshold},
                {"n", s.shares},
                {"progress", s.progress}};
}

SealStatus sealStatusFromJson(const json& j) {
    SealStatus s;
    s.initialized = j.value("initialized", false);
    s.sealed = j.value("sealed", true);
    s.threshold = j.value("t", 0);
    s.shares = j.value("n", 0);
    s.progress = j.value("progress", 0);
    return s;
}

json errorBody(const std::string& message, const std::string& codeName) {
    json body{{"errors", json::array({message})}};
    if (!codeName.empty())
        body["code"] = codeName;
    return body;
}

void respondJson(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

std::string tokenOf(const httplib::Request& req) { return req.get_header_value("X-Vault-Token"); }

json parseBody(const std::string& body) {
    if (body.empty())
        return json::object();
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw VaultError(ErrorCode::InvalidRequest, "request body must be a JSON object");
    return j;
}

std::string stringField(const json& j, const char* name, bool required,
                        const std::string& fallback = "") {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) {
        if (required)
            throw VaultError(ErrorCode::InvalidRequest, std::string(name) + " is required");
        return fallback;
    }
    if (!it->is_string())
        throw VaultError(ErrorCode::InvalidRequest, std::string(name) + " must be a string");
    return it->get<std::string>();
}

std::int64_t intField(const json& j, const char* name, std::int64_t fallback) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null())
        return fallback;
    if (!it->is_number_integer())
        throw VaultError(ErrorCode::InvalidRequest, std::string(name) + " must be an integer");
    return it->get<std::int64_t>();
}

bool boolField(const json& j, const char* name, bool fallback) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null())
        return fallback;
    if (!it->is_boolean())
        throw VaultError(ErrorCode::InvalidRequest, std::string(name) + " must be a boolean");
    return it->get<bool>();
}

std::vector<std::string> stringListField(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || !it->is_array())
        throw VaultError(ErrorCode::InvalidRequest, std::string(name) + " must be a list");
    std::vector<std::string> out;
    for (const auto& v : *it) {
        if (!v.is_string())
            throw VaultError(ErrorCode::InvalidRequest,
                             std::string(name) + " entries must be strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

int parseVersionParam(const std::string& raw) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc() || ptr != raw.data() + raw.size())
        throw VaultError(ErrorCode::InvalidRequest, "version must be an integer");
    return value;
}

template <typename Fn>
void guard(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const VaultError& e) {
        respondJson(res, httpStatusFor(e.code()), errorBody(e.what(), errorCodeName(e.code())));
    } catch (const Error& e) {
        respondJson(res, 400, errorBody(e.what(), errorCodeName(ErrorCode::InvalidRequest)));
    } catch (const std::exception& e) {
        respondJson(res, 500, errorBody(e.what(), ""));
    }
}

} // namespace

int httpStatusFor(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotInitialized:
        return 501;
    case ErrorCode::AlreadyInitialized:
        return 400;
    case ErrorCode::Sealed:
        return 503;
    case ErrorCode::InvalidRequest:
        return 400;
    case ErrorCode::InvalidShare:
        return 400;
    case ErrorCode::PermissionDenied:
        return 403;
    case ErrorCode::AuthFailed:
        return 403;
    case ErrorCode::NotFound:
        return 404;
    case ErrorCode::Corrupt:
        return 500;
    case ErrorCode::Unavailable:
        return 502;
    }
    return 500;
}

std::string errorCodeName(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotInitialized:
        return "not_initialized";
    case ErrorCode::AlreadyInitialized:
        return "already_initialized";
    case ErrorCode::Sealed:
        return "sealed";
    case ErrorCode::InvalidRequest:
        return "invalid_request";
    case ErrorCode::InvalidShare:
        return "invalid_share";
    case ErrorCode::PermissionDenied:
        return "permission_denied";
    case ErrorCode::AuthFailed:
        return "auth_failed";
    case ErrorCode::NotFound:
        return "not_found";
    case ErrorCode::Corrupt:
        return "corrupt";
    case ErrorCode::Unavailable:
        return "unavailable";
    }
    return "error";
}

void mountVaultRoutes(httplib::Server& server, Vault& vault) {
    server.Post("/v1/sys/init", [&vault](const httplib::Request& req, httplib::Response& res) {
        guard(res, [&] {
            const json body = parseBody(req.body);
            const int shares = static_cast<int>(intField(body, "secret_shares", 5));
            const int threshold = static_cast<int>(intField(body, "secret_threshold", 3));
            const InitResult result = vault.init(shares, threshold);
            respondJson(res, 200,
                        json{{"keys", result.shares}, {"root_token", result.rootToken}});
        });
    });

    server.Post("/v1/sys/unseal", [&vault](const httplib::Request& req, httplib::Response& res) {
        guard(res, [&] {
            const json body = parseBody(req.body);
            const std::string key = stringField(body, "key", false);
            const bool reset = boolField(body, "reset", false);
            respondJson(res, 200, sealStatusToJson(vault.unseal(key, reset)));
        });
    });

    server.Get("/v1/sys/seal-status",
               [&vault](const httplib::Request&, httplib::Response& res) {
                   guard(res, [&] { respondJson(res, 200, sealStatusToJson(vault.status())); });
               });

    server.Put(R"(/v1/sys/policies/([A-Za-z0-9_.-]+))",
               [&vault](const httplib::Request& req, httplib::Response& res) {
                   guard(res, [&] {
                       const json body = parseBody(req.body);
                       const PolicyDoc doc = policyDocFromJson(req.matches[1], body);
                       vault.policyWrite(tokenOf(req), doc);
                       res.status = 204;
                   });
               });

    server.Put(R"(/v1/auth/kubernetes/role/([A-Za-z0-9_.-]+))",
               [&vault](const httplib::Request& req, httplib::Response& res) {
                   guard(res, [&] {
                       const json body = parseBody(req.body);
                       Role role;
                       role.name = req.matches[1];
                       role.boundServiceAccounts =
                           stringListField(body, "bound_service_account_names");
                       role.boundNamespaces =
                           stringListField(body, "bound_service_account_namespaces");
                       role.policies = stringListField(body, "policies");
                       role.tokenTtlSeconds = intField(body, "ttl", 3600);
                       vault.roleWrite(tokenOf(req), role);
                       res.status = 204;
                   });
               });

    server.Post("/v1/auth/kubernetes/login",
                [&vault](const httplib::Request& req, httplib::Response& res) {
                    guard(res, [&] {
                        const json body = parseBody(req.body);
                        const std::string sa = stringField(body, "service_account", true);
                        const std::string ns = stringField(body, "namespace", true);
                        std::optional<std::string> roleName;
                        if (body.contains("role") && !body.at("role").is_null())
                            roleName = stringField(body, "role", true);
                        const AuthToken token = vault.login(sa, ns, roleName);
                        const std::int64_t lease =
                            token.expiresAtMs == 0
                                ? 0
                                : (token.expiresAtMs - token.issuedAtMs) / 1000;
                        respondJson(res, 200,
                                    json{{"auth",
                                          {{"client_token", token.id},
                                           {"policies", token.policies},
                                           {"lease_duration", lease}}}});
                    });
                });

    server.Get(R"(/v1/([A-Za-z0-9_.-]+)/data/(.+))",
               [&vault](const httplib::Request& req, httplib::Response& res) {
                   guard(res, [&] {
                       std::optional<int> version;
                       if (req.has_param("version"))
                           version = parseVersionParam(req.get_param_value("version"));
                       const SecretVersion sv =
                           vault.kvGet(tokenOf(req), req.matches[1], req.matches[2], version);
                       respondJson(
                           res, 200,
                           json{{"data",
                                 {{"data", sv.data},
                                  {"metadata",
                                   {{"version", sv.meta.version},
                                    {"created_time", formatTimestampMs(sv.meta.createdAtMs)},
                                    {"destroyed", sv.meta.destroyed}}}}}});
                   });
               });

    server.Post(R"(/v1/([A-Za-z0-9_.-]+)/data/(.+))",
                [&vault](const httplib::Request& req, httplib::Response& res) {
                    guard(res, [&] {
                        const json body = parseBody(req.body);
                        auto it = body.find("data");
                        if (it == body.end() || !it->is_object())
                            throw VaultError(ErrorCode::InvalidRequest,
                                             "body must carry a \"data\" object");
                        std::map<std::string, std::string> data;
                        for (const auto& [key, value] : it->items()) {
                            if (!value.is_string())
                                throw VaultError(ErrorCode::InvalidRequest,
                                                 "secret values must be strings");
                            data[key] = value.get<std::string>();
                        }
                        const int version =
                            vault.kvPut(tokenOf(req), req.matches[1], req.matches[2], data);
                        respondJson(res, 200, json{{"data", {{"version", version}}}});
                    });
                });

    server.Post(R"(/v1/([A-Za-z0-9_.-]+)/destroy/(.+))",
                [&vault](const httplib::Request& req, httplib::Response& res) {
                    guard(res, [&] {
                        const json body = parseBody(req.body);
                        auto it = body.find("versions");
                        if (it == body.end() || !it->is_array() || it->empty())
                            throw VaultError(ErrorCode::InvalidRequest,
                                             "body must carry a non-empty \"versions\" list");
                        for (const auto& v : *it) {
                            if (!v.is_number_integer())
                                throw VaultError(ErrorCode::InvalidRequest,
                                                 "versions entries must be integers");
                            vault.kvDestroy(tokenOf(req), req.matches[1], req.matches[2],
                                            v.get<int>());
                        }
                        res.status = 204;
                    });
                });
}

namespace {

ErrorCode codeFromName(const std::string& name, int status) {
    if (name == "not_initialized")
        return ErrorCode::NotInitialized;
    if (name == "already_initialized")
        return ErrorCode::AlreadyInitialized;
    if (name == "sealed")
        return ErrorCode::Sealed;
    if (name == "invalid_request")
        return ErrorCode::InvalidRequest;
    if (name == "invalid_share")
        return ErrorCode::InvalidShare;
    if (name == "permission_denied")
        return ErrorCode::PermissionDenied;
    if (name == "auth_failed")
        return ErrorCode::AuthFailed;
    if (name == "not_found")
        return ErrorCode::NotFound;
    if (name == "corrupt")
        return ErrorCode::Corrupt;
    switch (status) {
    case 501:
        return ErrorCode::NotInitialized;
    case 503:
        return ErrorCode::Sealed;
    case 403:
        return ErrorCode::PermissionDenied;
    case 404:
        return ErrorCode::NotFound;
    case 400:
        return ErrorCode::InvalidRequest;
    default:
        return ErrorCode::Corrupt;
    }
}

json expectJson(const httplib::Result& result) {
    if (!result)
        throw VaultError(ErrorCode::Unavailable,
                         "vault endpoint unreachable: " + httplib::to_string(result.error()));
    json body;
    if (!result->body.empty()) {
        body = json::parse(result->body, nullptr, false);
        if (body.is_discarded())
            body = json();
    }
    if (result->status >= 200 && result->status < 300)
        return body;
    std::string message = "vault returned status " + std::to_string(result->status);
    std::string codeName;
    if (body.is_object()) {
        auto errs = body.find("errors");
        if (errs != body.end() && errs->is_array() && !errs->empty() && (*errs)[0].is_string())
            message = (*errs)[0].get<std::string>();
        codeName = body.value("code", "");
    }
    throw VaultError(codeFromName(codeName, result->status), message);
}

template <typename Fn>
auto parseResponse(Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw VaultError(ErrorCode::Unavailable,
                         std::string("malformed vault response: ") + e.what());
    } catch (const ParseError& e) {
        throw VaultError(ErrorCode::Unavailable,
                         std::string("malformed vault response: ") + e.what());
    }
}

httplib::Headers tokenHeader(const std::string& token) {
    return httplib::Headers{{"X-Vault-Token", token}};
}

} // namespace

HttpVaultClient::HttpVaultClient(const std::string& baseUrl)
    : http_(std::make_unique<httplib::Client>(baseUrl)) {
    http_->set_connection_timeout(5, 0);
    http_->set_read_timeout(30, 0);
}

HttpVaultClient::~HttpVaultClient() = default;

SealStatus HttpVaultClient::status() {
    const json j = expectJson(http_->Get("/v1/sys/seal-status"));
    return sealStatusFromJson(j);
}

AuthToken HttpVaultClient::login(const std::string& serviceAccount, const std::string& ns,
                                 const std::optional<std::string>& roleName) {
    json body{{"service_account", serviceAccount}, {"namespace", ns}};
    if (roleName)
        body["role"] = *roleName;
    const json j =
        expectJson(http_->Post("/v1/auth/kubernetes/login", body.dump(), "application/json"));
    return parseResponse([&] {
        AuthToken token;
        token.id = j.at("auth").at("client_token").get<std::string>();
        if (j.at("auth").contains("policies"))
            token.policies = j.at("auth").at("policies").get<std::vector<std::string>>();
        return token;
    });
}

SecretVersion HttpVaultClient::kvGet(const std::string& token, const std::string& mount,
                                     const std::string& path, std::optional<int> version) {
    std::string target = "/v1/" + mount + "/data/" + path;
    if (version)
        target += "?version=" + std::to_string(*version);
    const json j = expectJson(http_->Get(target, tokenHeader(token)));
    return parseResponse([&] {
        SecretVersion sv;
        const json& envelope = j.at("data");
        for (const auto& [key, value] : envelope.at("data").items())
            sv.data[key] = value.get<std::string>();
        const json& meta = envelope.at("metadata");
        sv.meta.version = meta.at("version").get<int>();
        sv.meta.destroyed = meta.value("destroyed", false);
        if (meta.contains("created_time"))
            sv.meta.createdAtMs = parseTimestampMs(meta.at("created_time").get<std::string>());
        return sv;
    });
}

int HttpVaultClient::kvPut(const std::string& token, const std::string& mount,
                           const std::string& path,
                           const std::map<std::string, std::string>& data) {
    const json body{{"data", data}};
    const json j = expectJson(http_->Post("/v1/" + mount + "/data/" + path, tokenHeader(token),
                                          body.dump(), "application/json"));
    return parseResponse([&] { return j.at("data").at("version").get<int>(); });
}

void HttpVaultClient::policyWrite(const std::string& token, const PolicyDoc& doc) {
    if (doc.name.empty())
        throw VaultError(ErrorCode::InvalidRequest, "policy name must be non-empty");
    expectJson(http_->Put("/v1/sys/policies/" + doc.name, tokenHeader(token),
                          toJson(doc).dump(), "application/json"));
}

void HttpVaultClient::roleWrite(const std::string& token, const Role& role) {
    if (role.name.empty())
        throw VaultError(ErrorCode::InvalidRequest, "role name must be non-empty");
    const json body{{"bound_service_account_names", role.boundServiceAccounts},
                    {"bound_service_account_namespaces", role.boundNamespaces},
                    {"policies", role.policies},
                    {"ttl", role.tokenTtlSeconds}};
    expectJson(http_->Put("/v1/auth/kubernetes/role/" + role.name, tokenHeader(token),
                          body.dump(), "application/json"));
}

InitResult HttpVaultClient::init(int shares, int threshold) {
    const json body{{"secret_shares", shares}, {"secret_threshold", threshold}};
    const json j = expectJson(http_->Post("/v1/sys/init", body.dump(), "application/json"));
    return parseResponse([&] {
        InitResult result;
        result.shares = j.at("keys").get<std::vector<std::string>>();
        result.rootToken = j.at("root_token").get<std::string>();
        return result;
    });
}

SealStatus HttpVaultClient::unseal(const std::string& shareHex, bool reset) {
    const json body{{"key", shareHex}, {"reset", reset}};
    return sealStatusFromJson(
        expectJson(http_->Post("/v1/sys/unseal", body.dump(), "application/json")));
}

} // namespace clustergate::vault
