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

#include "clustergate/vault/inject.hpp"

#include "clustergate/errors.hpp"
#include "clustergate/manifest.hpp"
#include "clustergate/quantity.hpp"
#include "clustergate/vault/render.hpp"

namespace clustergate::vault {

using nlohmann::json;
using namespace clustergate::model;

model::Container agentSidecar(const InjectConfig& config) {
    Container agent;
    agent.name = "vault-agent";
    agent.image = config.agentImage;
    agent.requests["cpu"] = parseQuantity("250m", ResourceKind::Cpu);
    agent.requests["memory"] = parseQuantity("64Mi", ResourceKind::Memory);
    agent.limits["cpu"] = parseQuantity("500m", ResourceKind::Cpu);
    agent.limits["memory"] = parseQuantity("128Mi", ResourceKind::Memory);
    agent.readinessProbe = json{{"exec", {{"command", json::array({"test", "-d", config.mountPath})}}}};
    agent.livenessProbe = json{{"exec", {{"command", json::array({"test", "-d", config.mountPath})}}}};
    agent.volumeMounts.push_back(VolumeMount{config.volumeName, config.mountPath});
    return agent;
}

namespace {

std::string annotation(const Pod& pod, const std::string& key) {
    auto it = pod.annotations.find(key);
    return it == pod.annotations.end() ? "" : it->second;
}

} // namespace

InjectResult inject(VaultApi& api, const Pod& pod, const InjectConfig& config) {
    InjectResult result;
    result.mutatedPod = pod;
    if (annotation(pod, kInjectAnnotation) != "true")
        return result;

    const std::string secretPath = annotation(pod, kSecretPathAnnotation);
    if (secretPath.empty())
        throw ValidationError("pod " + pod.ns + "/" + pod.name + " requests injection but has no " +
                              std::string(kSecretPathAnnotation) + " annotation");
    const std::size_t slash = secretPath.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == secretPath.size())
        throw ValidationError("annotation " + std::string(kSecretPathAnnotation) + " (\"" +
                              secretPath + "\") must be <mount>/<path>");
    const std::string mount = secretPath.substr(0, slash);
    const std::string path = secretPath.substr(slash + 1);

    const SealStatus status = api.status();
    if (!status.initialized || status.sealed)
        throw VaultError(ErrorCode::Sealed, "vault is sealed; cannot inject secrets");

    std::optional<std::string> role;
    if (const std::string r = annotation(pod, kRoleAnnotation); !r.empty())
        role = r;
    const AuthToken token = api.login(pod.serviceAccount, pod.ns, role);
    const SecretVersion secret = api.kvGet(token.id, mount, path);
    const auto data = decodeSecretData(secret.data);

    // Collect template annotations; when none exist every key becomes a file.
    std::map<std::string, std::string> templates;
    const std::string prefix = kTemplateAnnotationPrefix;
    for (const auto& [key, value] : pod.annotations)
        if (key.rfind(prefix, 0) == 0 && key.size() > prefix.size())
            templates[key.substr(prefix.size())] = value;
    if (templates.empty()) {
        result.renderedFiles = data;
    } else {
        for (const auto& [name, tmpl] : templates)
            result.renderedFiles[name] = renderTemplate(tmpl, data);
    }

    // Mutate only after every vault step succeeded.
    Pod& mutated = result.mutatedPod;
    const Container agent = agentSidecar(config);
    const VolumeMount sharedMount{config.volumeName, config.mountPath};

    for (std::size_t i = 0; i < mutated.containers.size(); ++i) {
        Container& c = mutated.containers[i];
        const bool hadMounts = !c.volumeMounts.empty();
        c.volumeMounts.push_back(sharedMount);
        const json mountJson{{"name", sharedMount.name}, {"mountPath", sharedMount.mountPath}};
        const std::string base = "/spec/containers/" + std::to_string(i) + "/volumeMounts";
        if (hadMounts)
            result.patch.push_back(json{{"op", "add"}, {"path", base + "/-"}, {"value", mountJson}});
        else
            result.patch.push_back(
                json{{"op", "add"}, {"path", base}, {"value", json::array({mountJson})}});
    }

    mutated.containers.push_back(agent);
    result.patch.push_back(json{{"op", "add"},
                                {"path", "/spec/containers/-"},
                                {"value", manifest::toJson(agent)}});

    const bool hadVolumes = !pod.volumes.empty();
    mutated.volumes.push_back(Volume{config.volumeName, "Memory"});
    const json volumeJson{{"name", config.volumeName},
                          {"emptyDir", json{{"medium", "Memory"}}}};
    if (hadVolumes)
        result.patch.push_back(
            json{{"op", "add"}, {"path", "/spec/volumes/-"}, {"value", volumeJson}});
    else
        result.patch.push_back(json{
            {"op", "add"}, {"path", "/spec/volumes"}, {"value", json::array({volumeJson})}});

    result.injected = true;
    return result;
}

} // namespace clustergate::vault
