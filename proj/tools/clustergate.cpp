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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "clustergate/admission.hpp"
#include "clustergate/constraints.hpp"
#include "clustergate/errors.hpp"
#include "clustergate/manifest.hpp"
#include "clustergate/netpol.hpp"
#include "clustergate/vault/bootstrap.hpp"
#include "clustergate/vault/crypto.hpp"
#include "clustergate/vault/http.hpp"
#include "clustergate/vault/inject.hpp"

namespace cg = clustergate;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitTrafficDenied = 3;
constexpr int kExitValidationDenied = 4;
constexpr int kExitVault = 5;

std::string readFileTrimmed(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw cg::Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.pop_back();
    return text;
}

// "<mount>/<segment>/..." -> {mount, rest}; used by the kv subcommands.
std::pair<std::string, std::string> splitMountedPath(const std::string& full) {
    const auto slash = full.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 >= full.size())
        throw cg::Error("path must look like <mount>/<path>, got \"" + full + "\"");
    return {full.substr(0, slash), full.substr(slash + 1)};
}

struct Addr {
    std::string host;
    int port = 0;
};

Addr parseAddr(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
        throw cg::Error("address must look like host:port, got \"" + text + "\"");
    Addr addr;
    addr.host = text.substr(0, colon);
    try {
        addr.port = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw cg::Error("address port is not a number: \"" + text + "\"");
    }
    if (addr.port < 0 || addr.port > 65535)
        throw cg::Error("address port out of range: \"" + text + "\"");
    return addr;
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
    std::string stateFile;
    std::string from;
    std::string to;
    int port = 0;
    std::string protocol = "tcp";
    bool explain = false;
    std::string format = "table";
};

int runSimulate(const SimulateOpts& opts) {
    const cg::model::ClusterState state = cg::manifest::loadClusterState(opts.stateFile);
    cg::netpol::TrafficQuery query;
    query.src = cg::netpol::parseEndpoint(opts.from);
    query.dst = cg::netpol::parseEndpoint(opts.to);
    query.port = opts.port;
    query.protocol =
        opts.protocol == "udp" ? cg::model::Protocol::UDP : cg::model::Protocol::TCP;

    const cg::netpol::Verdict verdict = cg::netpol::evaluate(state, query);
    if (opts.format == "json") {
        std::cout << cg::netpol::toJson(verdict).dump() << "\n";
    } else {
        std::cout << (verdict.allowed ? "ALLOWED" : "DENIED") << "  " << opts.from << " -> "
                  << opts.to << " port " << opts.port << "/" << opts.protocol << "\n";
        std::cout << "  egress:  " << (verdict.egressAllowed ? "allowed" : "denied") << "\n";
        std::cout << "  ingress: " << (verdict.ingressAllowed ? "allowed" : "denied") << "\n";
        if (opts.explain) {
            if (verdict.trace.empty())
                std::cout << "  no policy selects either endpoint (default allow)\n";
            for (const auto& entry : verdict.trace) {
                std::cout << "  " << cg::model::toString(entry.direction) << " policy "
                          << entry.policy;
                if (entry.ruleIndex < 0)
                    std::cout << " has no rules for this direction (isolates)";
                else
                    std::cout << " rule " << entry.ruleIndex << " "
                              << (entry.matched ? "matched" : "did not match");
                std::cout << "\n";
            }
        }
    }
    return verdict.allowed ? kExitOk : kExitTrafficDenied;
}

// ---------------------------------------------------------------- validate

struct ValidateOpts {
    std::vector<std::string> files;
    std::string constraintsDir;
    std::string operation = "create";
    std::string format = "json";
};

int runValidate(const ValidateOpts& opts) {
    const auto constraints = cg::constraints::loadConstraintsDir(
        opts.constraintsDir, cg::constraints::TemplateRegistry::builtin());
    const auto operation = cg::constraints::reviewOperationFromString(opts.operation);

    bool denied = false;
    for (const auto& file : opts.files) {
        for (auto& object : cg::manifest::loadManifestFile(file)) {
            cg::constraints::ReviewRequest request;
            request.operation = operation;
            request.object = std::move(object);
            const auto decision = cg::constraints::review(request, constraints);
            denied = denied || !decision.allowed;
            for (const auto& violation : decision.violations) {
                if (opts.format == "json")
                    std::cout << cg::constraints::toJson(violation).dump() << "\n";
                else
                    std::cout << toString(violation.enforcementAction) << "  ["
                              << violation.constraintName << "] " << violation.objectRef.kind
                              << " " << violation.objectRef.ns << "/" << violation.objectRef.name
                              << ": " << violation.message << "\n";
            }
        }
    }
    return denied ? kExitValidationDenied : kExitOk;
}

// ------------------------------------------------------------------- audit

struct AuditOpts {
    std::string stateFile;
    std::string constraintsDir;
    std::string format = "json";
};

int runAudit(const AuditOpts& opts) {
    const auto constraints = cg::constraints::loadConstraintsDir(
        opts.constraintsDir, cg::constraints::TemplateRegistry::builtin());
    const cg::model::ClusterState state = cg::manifest::loadClusterState(opts.stateFile);
    const auto report = cg::constraints::audit(state, constraints);
    if (opts.format == "json") {
        std::cout << cg::constraints::toJson(report).dump() << "\n";
        return kExitOk;
    }
    std::cout << "total violations: " << report.total << "\n";
    for (const auto& [name, violations] : report.perConstraint) {
        std::cout << name << ": " << violations.size() << "\n";
        for (const auto& v : violations)
            std::cout << "  " << v.objectRef.kind << " " << v.objectRef.ns << "/"
                      << v.objectRef.name << ": " << v.message << "\n";
    }
    return kExitOk;
}

// ------------------------------------------------------------------- serve

struct ServeOpts {
    std::string addr = "127.0.0.1:8443";
    std::string constraintsDir;
    std::string stateFile;
    bool trackAdmitted = false;
    std::string vaultAddr;
    std::string vaultStorage;
    std::string vaultTokenFile;
    std::string tlsCert;
    std::string tlsKey;
    bool failOpen = false;
    std::string agentImage;
};

int runServe(const ServeOpts& opts) {
    cg::admission::AdmissionConfig config;
    config.constraintsDir = opts.constraintsDir;
    if (!opts.stateFile.empty())
        config.stateFile = opts.stateFile;
    config.trackAdmitted = opts.trackAdmitted;
    config.failOpen = opts.failOpen;
    if (!opts.agentImage.empty())
        config.injectConfig.agentImage = opts.agentImage;

    // Reserved: accepted for interface parity, read so a bad path fails at
    // startup, not needed while injection logs in per pod.
    if (!opts.vaultTokenFile.empty())
        (void)readFileTrimmed(opts.vaultTokenFile);

    std::unique_ptr<cg::vault::Vault> embedded;
    std::unique_ptr<cg::vault::VaultApi> vaultApi;
    if (!opts.vaultStorage.empty() && !opts.vaultAddr.empty())
        throw cg::Error("--vault-addr and --vault-storage are mutually exclusive");
    if (!opts.vaultStorage.empty()) {
        embedded = std::make_unique<cg::vault::Vault>(opts.vaultStorage);
        vaultApi = std::make_unique<cg::vault::InProcessVaultApi>(*embedded);
    } else if (!opts.vaultAddr.empty()) {
        vaultApi = std::make_unique<cg::vault::HttpVaultClient>(opts.vaultAddr);
    }

    cg::admission::AdmissionService service(config, vaultApi.get());

    std::unique_ptr<httplib::Server> server;
    if (!opts.tlsCert.empty() || !opts.tlsKey.empty()) {
        if (opts.tlsCert.empty() || opts.tlsKey.empty())
            throw cg::Error("--tls-cert and --tls-key must be given together");
        auto tls = std::make_unique<httplib::SSLServer>(opts.tlsCert.c_str(),
                                                        opts.tlsKey.c_str());
        if (!tls->is_valid())
            throw cg::Error("cannot load TLS certificate or key");
        server = std::move(tls);
    } else {
        server = std::make_unique<httplib::Server>();
    }

    service.mount(*server);
    if (embedded)
        cg::vault::mountVaultRoutes(*server, *embedded);

    const Addr addr = parseAddr(opts.addr);
    int port = addr.port;
    if (port == 0) {
        port = server->bind_to_any_port(addr.host);
        if (port < 0)
            throw cg::Error("cannot bind " + addr.host);
    } else if (!server->bind_to_port(addr.host, port)) {
        throw cg::Error("cannot bind " + opts.addr);
    }
    std::cout << "listening on " << addr.host << ":" << port << "\n" << std::flush;
    if (!server->listen_after_bind())
        throw cg::Error("server stopped unexpectedly");
    return kExitOk;
}

// ------------------------------------------------------------------- vault

cg::vault::HttpVaultClient vaultClient(const std::string& vaultAddr) {
    if (vaultAddr.empty())
        throw CLI::ValidationError("--vault-addr",
                                   "vault address required (or set CLUSTERGATE_VAULT_ADDR)");
    return cg::vault::HttpVaultClient(vaultAddr);
}

std::string vaultToken(const std::string& tokenFile) {
    if (tokenFile.empty())
        throw CLI::ValidationError(
            "--token-file", "vault token file required (or set CLUSTERGATE_VAULT_TOKEN_FILE)");
    return readFileTrimmed(tokenFile);
}

void printSealStatus(const cg::vault::SealStatus& status, const std::string& format) {
    if (format == "json") {
        std::cout << json{{"initialized", status.initialized},
                          {"sealed", status.sealed},
                          {"t", status.threshold},
                          {"n", status.shares},
                          {"progress", status.progress}}
                         .dump()
                  << "\n";
        return;
    }
    std::cout << "initialized: " << (status.initialized ? "true" : "false") << "\n"
              << "sealed:      " << (status.sealed ? "true" : "false") << "\n"
              << "shares:      " << status.shares << "\n"
              << "threshold:   " << status.threshold << "\n"
              << "progress:    " << status.progress << "\n";
}

int runVaultInit(const std::string& vaultAddr, int shares, int threshold,
                 const std::string& format) {
    auto client = vaultClient(vaultAddr);
    const cg::vault::InitResult result = client.init(shares, threshold);
    if (format == "json") {
        std::cout << json{{"keys", result.shares}, {"root_token", result.rootToken}}.dump()
                  << "\n";
        return kExitOk;
    }
    for (std::size_t i = 0; i < result.shares.size(); ++i)
        std::cout << "Unseal share " << i + 1 << ": " << result.shares[i] << "\n";
    std::cout << "Root token: " << result.rootToken << "\n";
    std::cout << "Store the shares separately; they are not retrievable again.\n";
    return kExitOk;
}

// Shares come from standard input, one per line, so they never land in argv
// or shell history.
int runVaultUnseal(const std::string& vaultAddr, bool reset, const std::string& format) {
    auto client = vaultClient(vaultAddr);
    cg::vault::SealStatus status = client.status();
    if (!status.initialized) {
        std::cerr << "vault is not initialized\n";
        return kExitVault;
    }
    if (reset)
        status = client.unseal("", true);
    std::string line;
    while (status.sealed && std::getline(std::cin, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty())
            continue;
        status = client.unseal(line);
    }
    printSealStatus(status, format);
    if (status.sealed) {
        std::cerr << "vault is still sealed (" << status.progress << "/" << status.threshold
                  << " shares)\n";
        return kExitVault;
    }
    return kExitOk;
}

int runVaultStatus(const std::string& vaultAddr, const std::string& format) {
    auto client = vaultClient(vaultAddr);
    const cg::vault::SealStatus status = client.status();
    printSealStatus(status, format);
    if (!status.initialized) {
        std::cerr << "vault is not initialized\n";
        return kExitVault;
    }
    if (status.sealed) {
        std::cerr << "vault is sealed\n";
        return kExitVault;
    }
    return kExitOk;
}

int runVaultKvPut(const std::string& vaultAddr, const std::string& tokenFile,
                  const std::string& fullPath, const std::vector<std::string>& pairs,
                  const std::string& format) {
    auto client = vaultClient(vaultAddr);
    const std::string token = vaultToken(tokenFile);
    const auto [mount, path] = splitMountedPath(fullPath);
    std::map<std::string, std::string> data;
    for (const auto& pair : pairs) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0)
            throw cg::Error("expected key=value, got \"" + pair + "\"");
        data[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    const int version = client.kvPut(token, mount, path, data);
    if (format == "json")
        std::cout << json{{"path", fullPath}, {"version", version}}.dump() << "\n";
    else
        std::cout << "wrote " << fullPath << " version " << version << "\n";
    return kExitOk;
}

int runVaultKvGet(const std::string& vaultAddr, const std::string& tokenFile,
                  const std::string& fullPath, std::optional<int> version,
                  const std::string& field, const std::string& format) {
    auto client = vaultClient(vaultAddr);
    const std::string token = vaultToken(tokenFile);
    const auto [mount, path] = splitMountedPath(fullPath);
    const cg::vault::SecretVersion secret = client.kvGet(token, mount, path, version);
    if (!field.empty()) {
        const auto it = secret.data.find(field);
        if (it == secret.data.end())
            throw cg::Error("secret has no key \"" + field + "\"");
        std::cout << it->second << "\n";
        return kExitOk;
    }
    if (format == "json") {
        std::cout << json{{"path", fullPath},
                          {"version", secret.meta.version},
                          {"data", secret.data}}
                         .dump()
                  << "\n";
        return kExitOk;
    }
    std::cout << fullPath << " version " << secret.meta.version << "\n";
    for (const auto& [key, value] : secret.data)
        std::cout << "  " << key << " = " << value << "\n";
    return kExitOk;
}

int runVaultPolicyWrite(const std::string& vaultAddr, const std::string& tokenFile,
                        const std::string& name, const std::string& file) {
    auto client = vaultClient(vaultAddr);
    const std::string token = vaultToken(tokenFile);
    json body = json::parse(readFileTrimmed(file), nullptr, false);
    if (body.is_discarded())
        throw cg::Error("policy file " + file + " is not valid JSON");
    const cg::vault::PolicyDoc doc = cg::vault::policyDocFromJson(name, body);
    client.policyWrite(token, doc);
    std::cout << "wrote policy " << name << "\n";
    return kExitOk;
}

int runVaultRoleWrite(const std::string& vaultAddr, const std::string& tokenFile,
                      const std::string& name, const std::vector<std::string>& serviceAccounts,
                      const std::vector<std::string>& namespaces,
                      const std::vector<std::string>& policies, std::int64_t ttl) {
    auto client = vaultClient(vaultAddr);
    const std::string token = vaultToken(tokenFile);
    cg::vault::Role role;
    role.name = name;
    role.boundServiceAccounts = serviceAccounts;
    role.boundNamespaces = namespaces;
    role.policies = policies;
    role.tokenTtlSeconds = ttl;
    client.roleWrite(token, role);
    std::cout << "wrote role " << name << "\n";
    return kExitOk;
}

int runVaultLogin(const std::string& vaultAddr, const std::string& serviceAccount,
                  const std::string& ns, const std::string& roleName,
                  const std::string& format) {
    auto client = vaultClient(vaultAddr);
    std::optional<std::string> role;
    if (!roleName.empty())
        role = roleName;
    const cg::vault::AuthToken token = client.login(serviceAccount, ns, role);
    if (format == "json")
        std::cout << json{{"client_token", token.id}, {"policies", token.policies}}.dump()
                  << "\n";
    else
        std::cout << "token: " << token.id << "\n";
    return kExitOk;
}

int runVaultCreateSecrets(const std::string& vaultAddr, const std::string& tokenFile,
                          const std::string& ns, const std::string& service,
                          const std::string& dir, std::int64_t ttl, const std::string& format) {
    auto client = vaultClient(vaultAddr);
    const std::string token = vaultToken(tokenFile);
    const cg::vault::SecretPlan plan = cg::vault::planServiceSecrets(ns, service, dir, ttl);
    const cg::vault::CreateSecretsResult result = cg::vault::applySecretPlan(client, token, plan);
    if (format == "json") {
        std::cout << json{{"secretPath", result.secretPath},
                          {"policy", result.policyName},
                          {"role", result.roleName},
                          {"version", result.secretVersion}}
                         .dump()
                  << "\n";
        return kExitOk;
    }
    std::cout << "secret " << result.secretPath << " version " << result.secretVersion << "\n"
              << "policy " << result.policyName << "\n"
              << "role " << result.roleName << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------ inject

struct InjectOpts {
    std::string file;
    std::string vaultAddr;
    std::string outDir;
    std::string agentImage;
    std::string format = "json";
};

int runInject(const InjectOpts& opts) {
    auto objects = cg::manifest::loadManifestFile(opts.file);
    if (objects.size() != 1 || !std::holds_alternative<cg::model::Pod>(objects.front()))
        throw cg::Error(opts.file + " must contain exactly one Pod");
    const auto& pod = std::get<cg::model::Pod>(objects.front());

    auto client = vaultClient(opts.vaultAddr);
    cg::vault::InjectConfig config;
    if (!opts.agentImage.empty())
        config.agentImage = opts.agentImage;
    const cg::vault::InjectResult result = cg::vault::inject(client, pod, config);

    if (!opts.outDir.empty()) {
        std::filesystem::create_directories(opts.outDir);
        for (const auto& [name, content] : result.renderedFiles) {
            std::ofstream out(std::filesystem::path(opts.outDir) / name, std::ios::binary);
            if (!out)
                throw cg::Error("cannot write " + name + " under " + opts.outDir);
            out << content;
        }
    }

    if (opts.format == "json") {
        json files = json::object();
        for (const auto& [name, content] : result.renderedFiles)
            files[name] = cg::vault::crypto::isValidUtf8(content)
                              ? json(content)
                              : json("__binary:" + cg::vault::crypto::base64Encode(content));
        std::cout << json{{"injected", result.injected},
                          {"pod", cg::manifest::toJson(
                                      cg::manifest::ParsedManifest(result.mutatedPod))},
                          {"patch", result.patch},
                          {"files", files}}
                         .dump()
                  << "\n";
        return kExitOk;
    }
    std::cout << (result.injected ? "injected" : "unchanged") << " pod " << pod.ns << "/"
              << pod.name << "\n";
    for (const auto& [name, content] : result.renderedFiles)
        std::cout << "  rendered " << name << " (" << content.size() << " bytes)\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cluster security policy engine: traffic simulation, admission "
                 "constraints, and a secrets vault",
                 "clustergate"};
    app.require_subcommand(1);
    app.set_config("--config")->envname("CLUSTERGATE_CONFIG");

    // simulate
    SimulateOpts simOpts;
    CLI::App* sim = app.add_subcommand("simulate", "Decide one pod-to-pod connection");
    sim->add_option("--state", simOpts.stateFile, "cluster state file")
        ->envname("CLUSTERGATE_STATE")
        ->required();
    sim->add_option("--from", simOpts.from, "source: ns/pod or IPv4")->required();
    sim->add_option("--to", simOpts.to, "destination: ns/pod or IPv4")->required();
    sim->add_option("--port", simOpts.port, "destination port")->required();
    sim->add_option("--protocol", simOpts.protocol, "tcp or udp")
        ->check(CLI::IsMember({"tcp", "udp"}));
    sim->add_flag("--explain", simOpts.explain, "print the per-policy trace");
    sim->add_option("--format", simOpts.format, "output format")
        ->envname("CLUSTERGATE_FORMAT")
        ->check(CLI::IsMember({"table", "json"}));

    // validate
    ValidateOpts valOpts;
    CLI::App* val = app.add_subcommand("validate", "Review manifests against constraints");
    val->add_option("-f,--filename", valOpts.files, "manifest file (repeatable)")->required();
    val->add_option("--constraints", valOpts.constraintsDir, "constraint directory")
        ->envname("CLUSTERGATE_CONSTRAINTS")
        ->required();
    val->add_option("--operation", valOpts.operation, "create, update, or delete")
        ->check(CLI::IsMember({"create", "update", "delete"}));
    val->add_option("--format", valOpts.format, "output format")
        ->envname("CLUSTERGATE_FORMAT")
        ->check(CLI::IsMember({"table", "json"}));

    // audit
    AuditOpts audOpts;
    CLI::App* aud = app.add_subcommand("audit", "Audit a cluster state against constraints");
    aud->add_option("--state", audOpts.stateFile, "cluster state file")
        ->envname("CLUSTERGATE_STATE")
        ->required();
    aud->add_option("--constraints", audOpts.constraintsDir, "constraint directory")
        ->envname("CLUSTERGATE_CONSTRAINTS")
        ->required();
    aud->add_option("--format", audOpts.format, "output format")
        ->envname("CLUSTERGATE_FORMAT")
        ->check(CLI::IsMember({"table", "json"}));

    // serve
    ServeOpts serveOpts;
    CLI::App* serve = app.add_subcommand("serve", "Run the admission webhook service");
    serve->add_option("--addr", serveOpts.addr, "listen address host:port (port 0 picks one)")
        ->envname("CLUSTERGATE_ADDR");
    serve->add_option("--constraints", serveOpts.constraintsDir, "constraint directory")
        ->envname("CLUSTERGATE_CONSTRAINTS")
        ->required();
    serve->add_option("--state", serveOpts.stateFile, "cluster state fixture for /audit")
        ->envname("CLUSTERGATE_STATE");
    serve->add_flag("--track-admitted", serveOpts.trackAdmitted,
                    "audit objects admitted through /validate");
    serve->add_option("--vault-addr", serveOpts.vaultAddr, "external vault URL")
        ->envname("CLUSTERGATE_VAULT_ADDR");
    serve->add_option("--vault-storage", serveOpts.vaultStorage,
                      "embedded vault storage file (also serves /v1/*)");
    serve->add_option("--vault-token-file", serveOpts.vaultTokenFile,
                      "vault token file (reserved; injection logs in per pod)")
        ->envname("CLUSTERGATE_VAULT_TOKEN_FILE");
    serve->add_option("--tls-cert", serveOpts.tlsCert, "TLS certificate file");
    serve->add_option("--tls-key", serveOpts.tlsKey, "TLS private key file");
    serve->add_flag("--fail-open", serveOpts.failOpen,
                    "turn injection failures into warnings instead of denials");
    serve->add_option("--agent-image", serveOpts.agentImage, "sidecar agent image");

    // vault
    CLI::App* vault = app.add_subcommand("vault", "Administer the secrets vault over HTTP");
    vault->require_subcommand(1);
    std::string vaultAddr;
    std::string tokenFile;
    std::string vaultFormat = "table";
    // The shared connection options live on every leaf so they can be given
    // before or after the leaf name.
    auto addVaultConnectionOpts = [&](CLI::App* sub, bool needsToken) {
        sub->add_option("--vault-addr", vaultAddr, "vault URL, e.g. http://127.0.0.1:8200")
            ->envname("CLUSTERGATE_VAULT_ADDR");
        if (needsToken)
            sub->add_option("--token-file", tokenFile, "file holding the vault token")
                ->envname("CLUSTERGATE_VAULT_TOKEN_FILE");
        sub->add_option("--format", vaultFormat, "output format")
            ->envname("CLUSTERGATE_FORMAT")
            ->check(CLI::IsMember({"table", "json"}));
    };
    addVaultConnectionOpts(vault, true);

    int initShares = 5;
    int initThreshold = 3;
    CLI::App* vInit = vault->add_subcommand("init", "Initialize: prints shares and root token");
    vInit->add_option("--shares", initShares, "number of unseal shares")
        ->check(CLI::Range(1, 255));
    vInit->add_option("--threshold", initThreshold, "shares needed to unseal")
        ->check(CLI::Range(1, 255));
    addVaultConnectionOpts(vInit, false);

    bool unsealReset = false;
    CLI::App* vUnseal =
        vault->add_subcommand("unseal", "Submit unseal shares read from standard input");
    vUnseal->add_flag("--reset", unsealReset, "drop partial unseal progress first");
    addVaultConnectionOpts(vUnseal, false);

    CLI::App* vStatus = vault->add_subcommand("status", "Print seal status");
    addVaultConnectionOpts(vStatus, false);

    CLI::App* vKv = vault->add_subcommand("kv", "Versioned key-value secrets");
    vKv->require_subcommand(1);
    std::string kvPath;
    std::vector<std::string> kvPairs;
    CLI::App* vKvPut = vKv->add_subcommand("put", "Write a secret version");
    vKvPut->add_option("path", kvPath, "<mount>/<path>")->required();
    vKvPut->add_option("data", kvPairs, "key=value entries")->required();
    addVaultConnectionOpts(vKvPut, true);

    std::string kvGetPath;
    int kvVersion = 0;
    std::string kvField;
    CLI::App* vKvGet = vKv->add_subcommand("get", "Read a secret version");
    vKvGet->add_option("path", kvGetPath, "<mount>/<path>")->required();
    vKvGet->add_option("--version", kvVersion, "version to read (default latest)");
    vKvGet->add_option("--field", kvField, "print just this key's value");
    addVaultConnectionOpts(vKvGet, true);

    CLI::App* vPolicy = vault->add_subcommand("policy", "Path-capability policies");
    vPolicy->require_subcommand(1);
    std::string policyName;
    std::string policyFile;
    CLI::App* vPolicyWrite = vPolicy->add_subcommand("write", "Upsert a policy from a file");
    vPolicyWrite->add_option("name", policyName, "policy name")->required();
    vPolicyWrite->add_option("file", policyFile, "JSON file with {\"rules\": [...]}")
        ->required();
    addVaultConnectionOpts(vPolicyWrite, true);

    CLI::App* vRole = vault->add_subcommand("role", "Login roles");
    vRole->require_subcommand(1);
    std::string roleName;
    std::vector<std::string> roleSas;
    std::vector<std::string> roleNss;
    std::vector<std::string> rolePolicies;
    std::int64_t roleTtl = 3600;
    CLI::App* vRoleWrite = vRole->add_subcommand("write", "Upsert a role");
    vRoleWrite->add_option("name", roleName, "role name")->required();
    vRoleWrite->add_option("--service-accounts", roleSas, "bound service accounts")
        ->required()
        ->delimiter(',');
    vRoleWrite->add_option("--namespaces", roleNss, "bound namespaces")
        ->required()
        ->delimiter(',');
    vRoleWrite->add_option("--policies", rolePolicies, "attached policies")
        ->required()
        ->delimiter(',');
    vRoleWrite->add_option("--ttl", roleTtl, "token lifetime in seconds (0 = never expires)");
    addVaultConnectionOpts(vRoleWrite, true);

    std::string loginSa;
    std::string loginNs;
    std::string loginRole;
    CLI::App* vLogin = vault->add_subcommand("login", "Exchange a service account for a token");
    vLogin->add_option("--service-account", loginSa, "service account name")->required();
    vLogin->add_option("--namespace", loginNs, "namespace")->required();
    vLogin->add_option("--role", loginRole, "require this specific role");
    addVaultConnectionOpts(vLogin, false);

    std::string csNs;
    std::string csService;
    std::string csDir;
    std::int64_t csTtl = 3600;
    CLI::App* vCreate = vault->add_subcommand(
        "create-secrets", "Store a directory as a secret with matching policy and role");
    vCreate->add_option("--namespace", csNs, "service namespace")->required();
    vCreate->add_option("--service", csService, "service name")->required();
    vCreate->add_option("--dir", csDir, "directory of secret files")->required();
    vCreate->add_option("--ttl", csTtl, "role token lifetime in seconds");
    addVaultConnectionOpts(vCreate, true);

    // inject
    InjectOpts injOpts;
    CLI::App* inj = app.add_subcommand("inject", "Dry-run secret injection for a pod");
    inj->add_option("-f,--filename", injOpts.file, "pod manifest")->required();
    inj->add_option("--vault-addr", injOpts.vaultAddr, "vault URL")
        ->envname("CLUSTERGATE_VAULT_ADDR");
    inj->add_option("--out", injOpts.outDir, "write rendered files into this directory");
    inj->add_option("--agent-image", injOpts.agentImage, "sidecar agent image");
    inj->add_option("--format", injOpts.format, "output format")
        ->envname("CLUSTERGATE_FORMAT")
        ->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed())
            return runSimulate(simOpts);
        if (val->parsed())
            return runValidate(valOpts);
        if (aud->parsed())
            return runAudit(audOpts);
        if (serve->parsed())
            return runServe(serveOpts);
        if (inj->parsed())
            return runInject(injOpts);
        if (vault->parsed()) {
            if (vInit->parsed())
                return runVaultInit(vaultAddr, initShares, initThreshold, vaultFormat);
            if (vUnseal->parsed())
                return runVaultUnseal(vaultAddr, unsealReset, vaultFormat);
            if (vStatus->parsed())
                return runVaultStatus(vaultAddr, vaultFormat);
            if (vKv->parsed() && vKvPut->parsed())
                return runVaultKvPut(vaultAddr, tokenFile, kvPath, kvPairs, vaultFormat);
            if (vKv->parsed() && vKvGet->parsed())
                return runVaultKvGet(vaultAddr, tokenFile, kvGetPath,
                                     vKvGet->count("--version") ? std::optional<int>(kvVersion)
                                                                : std::nullopt,
                                     kvField, vaultFormat);
            if (vPolicy->parsed() && vPolicyWrite->parsed())
                return runVaultPolicyWrite(vaultAddr, tokenFile, policyName, policyFile);
            if (vRole->parsed() && vRoleWrite->parsed())
                return runVaultRoleWrite(vaultAddr, tokenFile, roleName, roleSas, roleNss,
                                         rolePolicies, roleTtl);
            if (vLogin->parsed())
                return runVaultLogin(vaultAddr, loginSa, loginNs, loginRole, vaultFormat);
            if (vCreate->parsed())
                return runVaultCreateSecrets(vaultAddr, tokenFile, csNs, csService, csDir,
                                             csTtl, vaultFormat);
        }
        std::cerr << "error: no subcommand selected\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cg::vault::VaultError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVault;
    } catch (const cg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
