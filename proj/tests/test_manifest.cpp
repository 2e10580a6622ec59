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

#include <doctest.h>

#include <string>

#include "clustergate/errors.hpp"
#include "clustergate/manifest.hpp"
#include "clustergate/model.hpp"
#include "support/builders.hpp"
#include "support/helpers.hpp"
#include "support/random_cluster.hpp"

using namespace clustergate;
using nlohmann::json;

namespace {

constexpr const char* kPodYaml = R"(apiVersion: v1
kind: Pod
metadata:
  name: web-0
  namespace: shop
  labels:
    app: web
  annotations:
    checksum/config: abc123
spec:
  serviceAccountName: web-sa
  hostPID: true
  containers:
    - name: app
      image: registry.example.test/web:2
      resources:
        requests:
          cpu: 250m
          memory: 64Mi
        limits:
          cpu: 500m
          memory: 128Mi
      readinessProbe:
        httpGet:
          path: /ready
          port: 8080
      securityContext:
        capabilities:
          add: ["NET_BIND_SERVICE"]
          drop: ["ALL"]
      volumeMounts:
        - name: cfg
          mountPath: /etc/cfg
  initContainers:
    - name: setup
      image: registry.example.test/init:1
  volumes:
    - name: cfg
      emptyDir:
        medium: Memory
status:
  podIP: 10.0.0.12
)";

} // namespace

TEST_CASE("yaml pod manifest maps onto the model") {
    const auto parsed = manifest::parseManifest(kPodYaml, manifest::Format::Yaml);
    REQUIRE(std::holds_alternative<model::Pod>(parsed));
    const auto& pod = std::get<model::Pod>(parsed);
    CHECK(pod.name == "web-0");
    CHECK(pod.ns == "shop");
    CHECK(pod.labels.at("app") == "web");
    CHECK(pod.annotations.at("checksum/config") == "abc123");
    CHECK(pod.serviceAccount == "web-sa");
    CHECK(pod.hostPID);
    CHECK_FALSE(pod.hostIPC);
    REQUIRE(pod.containers.size() == 1);
    const auto& c = pod.containers[0];
    CHECK(c.image == "registry.example.test/web:2");
    CHECK(c.requests.at("cpu").value == 250);
    CHECK(c.requests.at("memory").value == 64LL * 1024 * 1024);
    CHECK(c.limits.at("cpu").value == 500);
    REQUIRE(c.readinessProbe.has_value());
    CHECK((*c.readinessProbe)["httpGet"]["path"] == "/ready");
    CHECK_FALSE(c.livenessProbe.has_value());
    CHECK(c.capabilitiesAdd == std::vector<std::string>{"NET_BIND_SERVICE"});
    CHECK(c.capabilitiesDrop == std::vector<std::string>{"ALL"});
    REQUIRE(c.volumeMounts.size() == 1);
    CHECK(c.volumeMounts[0].mountPath == "/etc/cfg");
    REQUIRE(pod.initContainers.size() == 1);
    CHECK(pod.initContainers[0].name == "setup");
    REQUIRE(pod.volumes.size() == 1);
    CHECK(pod.volumes[0].medium == "Memory");
    CHECK(pod.podIP == "10.0.0.12");
}

TEST_CASE("pod defaults: namespace, service account, integer cpu") {
    const auto pod = manifest::podFromJson(json::parse(R"({
        "kind": "Pod", "metadata": {"name": "p"},
        "spec": {"containers": [
            {"name": "c", "image": "img", "resources": {"limits": {"cpu": 2, "memory": 128}}}
        ]}
    })"));
    CHECK(pod.ns == "default");
    CHECK(pod.serviceAccount == "default");
    CHECK(pod.containers[0].limits.at("cpu").value == 2000);
    CHECK(pod.containers[0].limits.at("memory").value == 128);
    CHECK_FALSE(pod.podIP.has_value());
}

TEST_CASE("pod manifest parse errors carry context") {
    auto parse = [](const char* text) {
        return manifest::parseManifest(text, manifest::Format::Json);
    };
    CHECK_THROWS_WITH_AS(parse(R"({"kind": "Pod", "metadata": {}})"),
                         doctest::Contains("missing metadata.name"), ParseError);
    CHECK_THROWS_WITH_AS(parse(R"({"kind": "Pod", "metadata": {"name": "p"}})"),
                         doctest::Contains("missing spec"), ParseError);
    CHECK_THROWS_WITH_AS(parse(R"({"kind": "Pod", "metadata": {"name": "p"}, "spec": {"containers": []}})"),
                         doctest::Contains("non-empty list"), ParseError);
    CHECK_THROWS_WITH_AS(parse(R"({"kind": "Gadget", "metadata": {"name": "g"}})"),
                         doctest::Contains("unknown kind \"Gadget\""), ParseError);
    CHECK_THROWS_WITH_AS(parse(R"({"kind": "Pod)"), doctest::Contains("JSON syntax error at byte"),
                         ParseError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"kind": "Pod", "metadata": {"name": "p"}, "spec": {"containers": [
            {"name": "c", "image": "i", "resources": {"limits": {"cpu": 1.5}}}]}})"),
        doctest::Contains("fractional"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"kind": "Pod", "metadata": {"name": "p"}, "spec": {"containers": [
            {"name": "c", "image": "i", "resources": {"limits": {"cpu": -1}}}]}})"),
        doctest::Contains("negative"), ParseError);
}

TEST_CASE("workload manifests: replicas, templates, binding subjects") {
    const auto dep = manifest::workloadFromJson(json::parse(R"({
        "kind": "Deployment",
        "metadata": {"name": "web", "namespace": "shop", "labels": {"app": "web"}},
        "spec": {
            "replicas": 3,
            "template": {
                "metadata": {"labels": {"app": "web"}},
                "spec": {"containers": [{"name": "c", "image": "img"}]}
            }
        }
    })"));
    CHECK((dep.kind == model::WorkloadKind::Deployment));
    CHECK(dep.replicas == 3);
    REQUIRE(dep.podTemplate.has_value());
    CHECK(dep.podTemplate->name.empty());
    CHECK(dep.podTemplate->ns == "shop");
    CHECK(dep.podTemplate->containers[0].image == "img");
    CHECK(dep.subjects.empty());

    const auto binding = manifest::workloadFromJson(json::parse(R"({
        "kind": "ClusterRoleBinding",
        "metadata": {"name": "ops", "namespace": "ignored"},
        "subjects": [{"kind": "Group", "name": "system:unauthenticated"}]
    })"));
    CHECK((binding.kind == model::WorkloadKind::ClusterRoleBinding));
    CHECK(binding.ns.empty()); // cluster scoped
    REQUIRE(binding.subjects.size() == 1);
    CHECK(binding.subjects[0].kind == "Group");
    CHECK(binding.subjects[0].name == "system:unauthenticated");

    CHECK_THROWS_WITH_AS(manifest::workloadFromJson(json::parse(
                             R"({"kind": "Deployment", "metadata": {"name": "d"},
                                "spec": {"replicas": "three"}})")),
                         doctest::Contains("replicas must be an integer"), ParseError);
}

TEST_CASE("network policy parsing: policyTypes defaults and peer shape") {
    auto parse = [](const char* text) { return manifest::networkPolicyFromJson(json::parse(text)); };

    const auto ingressOnly = parse(R"({
        "kind": "NetworkPolicy", "metadata": {"name": "np", "namespace": "shop"},
        "spec": {"podSelector": {}, "ingress": [{}]}
    })");
    CHECK(ingressOnly.policyTypes == std::set<model::Direction>{model::Direction::Ingress});
    REQUIRE(ingressOnly.ingressRules.size() == 1);
    CHECK(ingressOnly.ingressRules[0].peers.empty());
    CHECK(ingressOnly.ingressRules[0].ports.empty());
    CHECK(ingressOnly.podSelector.empty());

    const auto withEgress = parse(R"({
        "kind": "NetworkPolicy", "metadata": {"name": "np", "namespace": "shop"},
        "spec": {"podSelector": {}, "egress": [{"to": [{"ipBlock": {"cidr": "10.0.0.0/8",
                 "except": ["10.1.0.0/16"]}}], "ports": [{"protocol": "UDP", "port": 53}]}]}
    })");
    CHECK(withEgress.policyTypes ==
          std::set<model::Direction>{model::Direction::Ingress, model::Direction::Egress});
    REQUIRE(withEgress.egressRules.size() == 1);
    const auto& peer = withEgress.egressRules[0].peers.at(0);
    REQUIRE(peer.ipBlock.has_value());
    CHECK(peer.ipBlock->cidr == "10.0.0.0/8");
    CHECK(peer.ipBlock->except == std::vector<std::string>{"10.1.0.0/16"});
    CHECK((withEgress.egressRules[0].ports.at(0).protocol == model::Protocol::UDP));
    CHECK(withEgress.egressRules[0].ports.at(0).port == 53);

    const auto explicitTypes = parse(R"({
        "kind": "NetworkPolicy", "metadata": {"name": "np", "namespace": "shop"},
        "spec": {"podSelector": {}, "policyTypes": ["Egress"]}
    })");
    CHECK(explicitTypes.policyTypes == std::set<model::Direction>{model::Direction::Egress});

    CHECK_THROWS_WITH_AS(parse(R"({
        "kind": "NetworkPolicy", "metadata": {"name": "np"},
        "spec": {"podSelector": {}, "ingress": [{"from": [{}]}]}
    })"),
                         doctest::Contains("empty peer"), ParseError);
    CHECK_THROWS_WITH_AS(parse(R"({
        "kind": "NetworkPolicy", "metadata": {"name": "np"},
        "spec": {"podSelector": {}, "ingress": [{"from": [
            {"ipBlock": {"cidr": "10.0.0.0/8"}, "podSelector": {}}]}]}
    })"),
                         doctest::Contains("must not combine ipBlock"), ParseError);
    CHECK_THROWS_WITH_AS(parse(R"({
        "kind": "NetworkPolicy", "metadata": {"name": "np"},
        "spec": {"podSelector": {}, "ingress": [{"ports": [{"port": 70000}]}]}
    })"),
                         doctest::Contains("out of range"), ParseError);
    CHECK_THROWS_WITH_AS(parse(R"({
        "kind": "NetworkPolicy", "metadata": {"name": "np"},
        "spec": {"podSelector": {}, "policyTypes": ["Sideways"]}
    })"),
                         doctest::Contains("unknown policy type"), ParseError);
}

TEST_CASE("yaml scalars resolve per the core schema, quoting wins") {
    const auto doc = manifest::yamlToJson(R"(plain: 42
quoted: "42"
flag: true
legacy: False
pi: 3.5
nothing: null
tilde: ~
empty:
big: 123456789012345678901234567890
octalish: 0755text
)");
    CHECK(doc["plain"] == json(42));
    CHECK(doc["quoted"] == json("42"));
    CHECK(doc["flag"] == json(true));
    CHECK(doc["legacy"] == json(false));
    CHECK(doc["pi"] == json(3.5));
    CHECK(doc["nothing"].is_null());
    CHECK(doc["tilde"].is_null());
    CHECK(doc["empty"].is_null());
    CHECK(doc["big"] == json("123456789012345678901234567890")); // beyond int64 stays text
    CHECK(doc["octalish"] == json("0755text"));
}

TEST_CASE("yaml streams split on document markers") {
    const auto docs = manifest::parseManifestStream(
        "---\nkind: Pod\nmetadata: {name: a, namespace: n1}\n"
        "spec: {containers: [{name: c, image: i}]}\n"
        "---\nkind: Pod\nmetadata: {name: b, namespace: n1}\n"
        "spec: {containers: [{name: c, image: i}]}\n",
        manifest::Format::Yaml);
    REQUIRE(docs.size() == 2);
    CHECK(std::get<model::Pod>(docs[0]).name == "a");
    CHECK(std::get<model::Pod>(docs[1]).name == "b");
}

TEST_CASE("file loader dispatches on extension") {
    testing::TempDir dir;
    testing::writeFile(dir.str("p.json"),
                       R"({"kind": "Pod", "metadata": {"name": "jp", "namespace": "n"},
                          "spec": {"containers": [{"name": "c", "image": "i"}]}})");
    testing::writeFile(dir.str("p.yaml"), "kind: Pod\nmetadata: {name: yp, namespace: n}\n"
                                          "spec: {containers: [{name: c, image: i}]}\n");
    const auto fromJson = manifest::loadManifestFile(dir.str("p.json"));
    const auto fromYaml = manifest::loadManifestFile(dir.str("p.yaml"));
    REQUIRE(fromJson.size() == 1);
    REQUIRE(fromYaml.size() == 1);
    CHECK(std::get<model::Pod>(fromJson[0]).name == "jp");
    CHECK(std::get<model::Pod>(fromYaml[0]).name == "yp");
    CHECK_THROWS_AS(manifest::loadManifestFile(dir.str("absent.yaml")), NotFoundError);
}

TEST_CASE("pod json form omits defaults and round-trips") {
    const auto pod = testing::compliantPod();
    const auto doc = manifest::toJson(pod);
    CHECK(doc["apiVersion"] == "v1");
    CHECK(doc["kind"] == "Pod");
    CHECK_FALSE(doc["spec"].contains("serviceAccountName"));
    CHECK_FALSE(doc["metadata"].contains("annotations"));
    CHECK(manifest::podFromJson(doc) == pod);
}

TEST_CASE("fixture manifests round-trip through their json form") {
    for (const char* name : {"crabserver-pod.yaml", "wrong-namespace-pod.yaml",
                             "unannotated-pod.yaml", "bad-image.yaml"}) {
        const auto docs = manifest::loadManifestFile(testing::fixturesDir() / "pods" / name);
        REQUIRE(docs.size() == 1);
        CAPTURE(name);
        CHECK(manifest::manifestFromJson(manifest::toJson(docs[0])) == docs[0]);
    }
}

TEST_CASE("random cluster states round-trip exactly") {
    testing::ClusterGen gen(0xC1A5);
    for (int i = 0; i < 50; ++i) {
        const auto state = gen.next();
        CAPTURE(i);
        CHECK(manifest::clusterStateFromJson(manifest::toJson(state)) == state);
    }
}

TEST_CASE("cluster state fixtures accept bare namespace names") {
    const auto state = manifest::clusterStateFromJson(json::parse(R"({
        "namespaces": ["alpha", {"name": "beta", "labels": {"team": "red"}}],
        "pods": [{"kind": "Pod", "metadata": {"name": "p", "namespace": "alpha"},
                  "spec": {"containers": [{"name": "c", "image": "i"}]}}]
    })"));
    REQUIRE(state.namespaces.size() == 2);
    CHECK(state.namespaces[0].labels.at("kubernetes.io/metadata.name") == "alpha");
    CHECK(state.namespaces[1].labels.at("kubernetes.io/metadata.name") == "beta");
    CHECK(state.namespaces[1].labels.at("team") == "red");
    CHECK(state.findPod("alpha", "p") != nullptr);
    CHECK(state.findPod("alpha", "ghost") == nullptr);
    CHECK(state.findNamespace("beta") != nullptr);

    // validate() runs on load: pods must live in a declared namespace.
    CHECK_THROWS_AS(manifest::clusterStateFromJson(json::parse(R"({
        "namespaces": ["alpha"],
        "pods": [{"kind": "Pod", "metadata": {"name": "p", "namespace": "ghost"},
                  "spec": {"containers": [{"name": "c", "image": "i"}]}}]
    })")),
                    ValidationError);
    CHECK_THROWS_AS(manifest::clusterStateFromJson(json::parse(R"({
        "namespaces": ["alpha"],
        "pods": [{"kind": "Pod", "metadata": {"name": "p", "namespace": "alpha"},
                  "spec": {"containers": [{"name": "c", "image": "i"}]}},
                 {"kind": "Pod", "metadata": {"name": "p", "namespace": "alpha"},
                  "spec": {"containers": [{"name": "c", "image": "i"}]}}]
    })")),
                    ValidationError);
}

TEST_CASE("cluster model invariants: duplicate ips and container names") {
    model::ClusterState state;
    state.namespaces.push_back({"n1", {{"kubernetes.io/metadata.name", "n1"}}});
    auto pod = testing::compliantPod("n1", "a");
    pod.podIP = "10.0.0.1";
    auto other = testing::compliantPod("n1", "b");
    other.podIP = "10.0.0.1";
    state.pods = {pod, other};
    CHECK_THROWS_AS(model::validate(state), ValidationError);

    other.podIP = "10.0.0.2";
    state.pods = {pod, other};
    CHECK_NOTHROW(model::validate(state));

    auto twin = testing::compliantPod("n1", "c");
    twin.containers.push_back(twin.containers[0]); // duplicate container name
    state.pods.push_back(twin);
    CHECK_THROWS_AS(model::validate(state), ValidationError);
}
