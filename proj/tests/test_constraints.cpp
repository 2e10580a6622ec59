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

#include <set>
#include <string>
#include <vector>

#include "clustergate/constraints.hpp"
#include "clustergate/errors.hpp"
#include "clustergate/manifest.hpp"
#include "support/builders.hpp"
#include "support/helpers.hpp"

using namespace clustergate;
using constraints::Constraint;
using constraints::EnforcementAction;
using constraints::ReviewOperation;
using nlohmann::json;

namespace {

Constraint constraintOf(const json& doc) {
    return constraints::constraintFromJson(doc, constraints::TemplateRegistry::builtin());
}

std::vector<std::string> messagesFor(const Constraint& c, const manifest::ParsedManifest& object) {
    std::vector<std::string> out;
    for (const auto& v : constraints::check(c, constraints::viewOf(object)))
        out.push_back(v.message);
    return out;
}

std::string fixtureConstraintsDir() {
    return (testing::fixturesDir() / "constraints").string();
}

} // namespace

TEST_CASE("image repository prefixes gate every container") {
    const auto c = constraintOf(json::parse(
        R"({"name": "repos", "template": "k8sallowedrepos",
           "parameters": {"repos": ["registry.cern.ch/cmsweb/"]}})"));
    CHECK(messagesFor(c, testing::compliantPod()).empty());

    auto pod = testing::compliantPod();
    pod.containers[0].image = "docker.io/library/nginx:1.25";
    const auto messages = messagesFor(c, pod);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] == "container \"frontend\" image \"docker.io/library/nginx:1.25\" does not "
                         "begin with an allowed repository prefix (registry.cern.ch/cmsweb/)");

    // Init containers are held to the same rule.
    auto withInit = testing::compliantPod();
    auto init = testing::compliantContainer("setup");
    init.image = "quay.io/setup:1";
    withInit.initContainers.push_back(init);
    const auto initMessages = messagesFor(c, withInit);
    REQUIRE(initMessages.size() == 1);
    CHECK(initMessages[0].find("container \"setup\"") == 0);
}

TEST_CASE("limit ceilings compare exact quantities across suffixes") {
    const auto c = constraintOf(json::parse(
        R"({"name": "limits", "template": "k8scontainerlimits",
           "parameters": {"cpu": "1500m", "memory": "4Gi"}})"));
    CHECK(messagesFor(c, testing::compliantPod()).empty());

    // One core is within a 1500m ceiling even though the spellings differ.
    auto within = testing::compliantPod();
    within.containers[0].limits["cpu"] = model::parseQuantity("1", model::ResourceKind::Cpu);
    CHECK(messagesFor(c, within).empty());

    auto above = testing::compliantPod();
    above.containers[0].limits["cpu"] = model::parseQuantity("2000m", model::ResourceKind::Cpu);
    auto messages = messagesFor(c, above);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] == "container \"frontend\" cpu limit 2 exceeds maximum 1500m");

    auto missing = testing::compliantPod();
    missing.containers[0].limits.erase("memory");
    messages = messagesFor(c, missing);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] == "container \"frontend\" has no memory limit");
}

TEST_CASE("request ceilings mirror the limit check on requests") {
    const auto c = constraintOf(json::parse(
        R"({"name": "requests", "template": "k8scontainerrequests",
           "parameters": {"cpu": "1", "memory": "2Gi"}})"));
    CHECK(messagesFor(c, testing::compliantPod()).empty());

    auto greedy = testing::compliantPod();
    greedy.containers[0].requests["memory"] =
        model::parseQuantity("3Gi", model::ResourceKind::Memory);
    const auto messages = messagesFor(c, greedy);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] == "container \"frontend\" memory request 3Gi exceeds maximum 2Gi");

    auto silent = testing::compliantPod();
    silent.containers[0].requests.clear();
    CHECK(messagesFor(c, silent).size() == 2); // no cpu request, no memory request
}

TEST_CASE("limit to request ratios hold exactly at the boundary") {
    const auto c = constraintOf(json::parse(
        R"({"name": "ratio", "template": "k8scontainerratios", "parameters": {"ratio": 2}})"));
    // The compliant recipe sits exactly on the 2x boundary.
    CHECK(messagesFor(c, testing::compliantPod()).empty());

    auto over = testing::compliantPod();
    over.containers[0].limits["cpu"] = model::parseQuantity("250m", model::ResourceKind::Cpu);
    auto messages = messagesFor(c, over);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] == "container \"frontend\" cpu limit 250m exceeds 2 times the request 100m");

    auto unanchored = testing::compliantPod();
    unanchored.containers[0].requests.erase("cpu");
    messages = messagesFor(c, unanchored);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] == "container \"frontend\" has a cpu limit but no cpu request");

    // Fractional ratios compare exactly, not through floating point.
    const auto fractional = constraintOf(json::parse(
        R"({"name": "ratio", "template": "k8scontainerratios", "parameters": {"ratio": 1.5}})"));
    auto edge = testing::compliantPod();
    edge.containers[0].requests["cpu"] = model::parseQuantity("100m", model::ResourceKind::Cpu);
    edge.containers[0].limits["cpu"] = model::parseQuantity("150m", model::ResourceKind::Cpu);
    edge.containers[0].requests["memory"] = model::parseQuantity("2", model::ResourceKind::Memory);
    edge.containers[0].limits["memory"] = model::parseQuantity("3", model::ResourceKind::Memory);
    CHECK(messagesFor(fractional, edge).empty());
    edge.containers[0].limits["cpu"] = model::parseQuantity("151m", model::ResourceKind::Cpu);
    CHECK(messagesFor(fractional, edge).size() == 1);
}

TEST_CASE("resource declarations can be required wholesale") {
    const auto c = constraintOf(json::parse(
        R"({"name": "declare", "template": "k8srequiredresources",
           "parameters": {"limits": ["cpu", "memory"], "requests": ["cpu", "memory"]}})"));
    CHECK(messagesFor(c, testing::compliantPod()).empty());

    auto bare = testing::compliantPod();
    bare.containers[0].limits.clear();
    bare.containers[0].requests.erase("memory");
    const auto messages = messagesFor(c, bare);
    REQUIRE(messages.size() == 3);
    CHECK(messages[0] == "container \"frontend\" has no cpu limit");
    CHECK(messages[1] == "container \"frontend\" has no memory limit");
    CHECK(messages[2] == "container \"frontend\" has no memory request");
}

TEST_CASE("anonymous and unauthenticated binding subjects are flagged") {
    const auto c = constraintOf(
        json::parse(R"({"name": "anon", "template": "k8sdisallowanonymous"})"));
    CHECK(messagesFor(c, testing::roleBinding("cmsweb", "ok", "ServiceAccount", "ci-bot")).empty());

    auto messages =
        messagesFor(c, testing::roleBinding("cmsweb", "bad", "Group", "system:unauthenticated"));
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] ==
          "binding grants access to unauthenticated subject Group \"system:unauthenticated\"");

    messages = messagesFor(c, testing::roleBinding("cmsweb", "anon", "User", "system:anonymous"));
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] == "binding grants access to unauthenticated subject User \"system:anonymous\"");
}

TEST_CASE("replica counts must land in an allowed range") {
    const auto c = constraintOf(json::parse(
        R"({"name": "replicas", "template": "k8sreplicalimits",
           "parameters": {"ranges": [{"min": 1, "max": 10}, {"min": 20, "max": 20}]}})"));
    CHECK(messagesFor(c, testing::compliantDeployment()).empty());
    CHECK(messagesFor(c, testing::compliantDeployment("cmsweb", "pinned", 20)).empty());

    const auto messages = messagesFor(c, testing::compliantDeployment("cmsweb", "wide", 15));
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] == "replicas=15 is outside every allowed range [1..10], [20..20]");

    // Pods carry no replica count, so the check does not apply.
    CHECK(messagesFor(c, testing::compliantPod()).empty());
}

TEST_CASE("probe requirements are per container and per probe") {
    const auto c = constraintOf(json::parse(
        R"({"name": "probes", "template": "k8srequiredprobes",
           "parameters": {"probes": ["readinessProbe", "livenessProbe"]}})"));
    CHECK(messagesFor(c, testing::compliantPod()).empty());

    auto pod = testing::compliantPod();
    pod.containers[0].livenessProbe.reset();
    auto messages = messagesFor(c, pod);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] == "container \"frontend\" is missing livenessProbe");

    pod.containers[0].readinessProbe.reset();
    messages = messagesFor(c, pod);
    REQUIRE(messages.size() == 2);
    CHECK(messages[0] == "container \"frontend\" is missing readinessProbe");
}

TEST_CASE("capability adds and drops are policed") {
    const auto c = constraintOf(json::parse(
        R"({"name": "caps", "template": "k8spspcapabilities",
           "parameters": {"allowedCapabilities": ["NET_BIND_SERVICE"],
                          "requiredDropCapabilities": ["ALL"]}})"));
    auto pod = testing::compliantPod();
    pod.containers[0].capabilitiesAdd = {"NET_BIND_SERVICE"};
    pod.containers[0].capabilitiesDrop = {"ALL"};
    CHECK(messagesFor(c, pod).empty());

    pod.containers[0].capabilitiesAdd = {"SYS_ADMIN"};
    pod.containers[0].capabilitiesDrop = {};
    const auto messages = messagesFor(c, pod);
    REQUIRE(messages.size() == 2);
    CHECK(messages[0] ==
          "container \"frontend\" adds capability \"SYS_ADMIN\" which is not in the allowed set");
    CHECK(messages[1] == "container \"frontend\" does not drop required capability \"ALL\"");

    const auto wildcard = constraintOf(json::parse(
        R"({"name": "caps", "template": "k8spspcapabilities",
           "parameters": {"allowedCapabilities": ["*"]}})"));
    CHECK(messagesFor(wildcard, pod).size() == 0);
}

TEST_CASE("host namespace sharing is rejected") {
    const auto c = constraintOf(
        json::parse(R"({"name": "hostns", "template": "k8spsphostnamespaces"})"));
    CHECK(messagesFor(c, testing::compliantPod()).empty());

    auto pod = testing::compliantPod();
    pod.hostPID = true;
    auto messages = messagesFor(c, pod);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] == "pod shares the host PID namespace (hostPID=true)");

    pod.hostIPC = true;
    messages = messagesFor(c, pod);
    REQUIRE(messages.size() == 2);
    CHECK(messages[1] == "pod shares the host IPC namespace (hostIPC=true)");

    // Applies to workload templates through the same view.
    auto dep = testing::compliantDeployment();
    dep.podTemplate->hostIPC = true;
    CHECK(messagesFor(c, dep).size() == 1);
}

TEST_CASE("match criteria select by kind, namespace and labels") {
    auto c = constraintOf(json::parse(
        R"({"name": "m", "template": "k8spsphostnamespaces",
           "match": {"kinds": ["Pod"], "namespaces": ["cmsweb"],
                     "excludedNamespaces": ["kube-system"],
                     "labelSelector": {"matchLabels": {"app": "frontend"}}}})"));
    const auto pod = testing::compliantPod("cmsweb", "frontend");
    CHECK(constraints::constraintMatches(c, constraints::viewOf(pod)));

    CHECK_FALSE(constraints::constraintMatches(
        c, constraints::viewOf(testing::compliantDeployment()))); // kind mismatch
    CHECK_FALSE(constraints::constraintMatches(
        c, constraints::viewOf(testing::compliantPod("other", "frontend"))));
    CHECK_FALSE(constraints::constraintMatches(
        c, constraints::viewOf(testing::compliantPod("cmsweb", "backend"))));

    // excludedNamespaces wins even when namespaces lists the same entry.
    auto excluded = constraintOf(json::parse(
        R"({"name": "m", "template": "k8spsphostnamespaces",
           "match": {"namespaces": ["cmsweb"], "excludedNamespaces": ["cmsweb"]}})"));
    CHECK_FALSE(constraints::constraintMatches(excluded, constraints::viewOf(pod)));
}

TEST_CASE("parameter schemas reject malformed constraints at load") {
    auto load = [](const char* text) { return constraintOf(json::parse(text)); };
    CHECK_THROWS_WITH_AS(load(R"({"name": "x", "template": "nosuch"})"),
                         doctest::Contains("unknown template"), ValidationError);
    CHECK_THROWS_WITH_AS(load(R"({"template": "k8sallowedrepos"})"),
                         doctest::Contains("missing name"), ValidationError);
    CHECK_THROWS_WITH_AS(load(R"({"name": "x", "template": "k8sallowedrepos"})"),
                         doctest::Contains("missing required parameter \"repos\""),
                         ValidationError);
    CHECK_THROWS_WITH_AS(
        load(R"({"name": "x", "template": "k8sallowedrepos", "parameters": {"repos": []}})"),
        doctest::Contains("must not be empty"), ValidationError);
    CHECK_THROWS_WITH_AS(
        load(R"({"name": "x", "template": "k8sallowedrepos", "parameters": {"repos": [1]}})"),
        doctest::Contains("list of strings"), ValidationError);
    CHECK_THROWS_WITH_AS(
        load(R"({"name": "x", "template": "k8sallowedrepos",
               "parameters": {"repos": ["r/"], "bogus": 1}})"),
        doctest::Contains("unknown parameter \"bogus\""), ValidationError);
    CHECK_THROWS_WITH_AS(
        load(R"({"name": "x", "template": "k8scontainerlimits",
               "parameters": {"cpu": "fast", "memory": "1Gi"}})"),
        doctest::Contains("quantity \"fast\""), ParseError);
    CHECK_THROWS_WITH_AS(
        load(R"({"name": "x", "template": "k8scontainerratios", "parameters": {"ratio": "2"}})"),
        doctest::Contains("must be a number"), ValidationError);
    CHECK_THROWS_WITH_AS(
        load(R"({"name": "x", "template": "k8scontainerratios", "parameters": {"ratio": 0}})"),
        doctest::Contains("(0, 1000000]"), ValidationError);
    CHECK_THROWS_WITH_AS(
        load(R"({"name": "x", "template": "k8sreplicalimits", "parameters": {"ranges": []}})"),
        doctest::Contains("non-empty"), ValidationError);
    CHECK_THROWS_WITH_AS(
        load(R"({"name": "x", "template": "k8sreplicalimits",
               "parameters": {"ranges": [{"min": 5, "max": 2}]}})"),
        doctest::Contains("min > max"), ValidationError);
    CHECK_THROWS_WITH_AS(
        load(R"({"name": "x", "template": "k8sreplicalimits",
               "parameters": {"ranges": [{"min": 1}]}})"),
        doctest::Contains("{min: int, max: int}"), ValidationError);
}

TEST_CASE("constraint directories load sorted and reject duplicates") {
    const auto loaded = constraints::loadConstraintsDir(fixtureConstraintsDir(),
                                                        constraints::TemplateRegistry::builtin());
    REQUIRE(loaded.size() == 10);
    std::vector<std::string> names;
    for (const auto& c : loaded)
        names.push_back(c.name);
    CHECK(std::is_sorted(names.begin(), names.end()));
    const std::set<std::string> expected{
        "capabilities-restricted", "container-limits-bounded",  "container-requests-bounded",
        "containers-declare-resources", "limit-request-ratio-max-2", "no-anonymous-bindings",
        "no-host-namespaces",      "probes-required",           "repo-is-cmsweb",
        "replicas-within-range"};
    CHECK(std::set<std::string>(names.begin(), names.end()) == expected);

    testing::TempDir dir;
    testing::writeFile(dir.str("a.json"),
                       R"({"name": "same", "template": "k8spsphostnamespaces"})");
    testing::writeFile(dir.str("b.yaml"), "name: same\ntemplate: k8spsphostnamespaces\n");
    CHECK_THROWS_WITH_AS(
        constraints::loadConstraintsDir(dir.str(), constraints::TemplateRegistry::builtin()),
        doctest::Contains("duplicate constraint name \"same\""), ValidationError);

    testing::TempDir bad;
    testing::writeFile(bad.str("broken.json"), R"({"name": "x", "template": "nosuch"})");
    CHECK_THROWS_WITH_AS(
        constraints::loadConstraintsDir(bad.str(), constraints::TemplateRegistry::builtin()),
        doctest::Contains("broken.json"), ValidationError);

    CHECK_THROWS_AS(constraints::loadConstraintsDir(dir.str("missing"),
                                                    constraints::TemplateRegistry::builtin()),
                    NotFoundError);
}

TEST_CASE("review blocks on deny, reports on warn, never blocks deletes") {
    auto constraints10 = constraints::loadConstraintsDir(fixtureConstraintsDir(),
                                                         constraints::TemplateRegistry::builtin());

    const auto good = testing::createRequest(testing::compliantPod());
    const auto goodDecision = constraints::review(good, constraints10);
    CHECK(goodDecision.allowed);
    CHECK(goodDecision.violations.empty());
    CHECK(constraints::review(testing::createRequest(testing::compliantDeployment()), constraints10)
              .allowed);

    auto badPod = testing::compliantPod();
    badPod.hostPID = true;
    auto request = testing::createRequest(badPod);
    auto decision = constraints::review(request, constraints10);
    CHECK_FALSE(decision.allowed);
    REQUIRE(decision.violations.size() == 1);
    CHECK(decision.violations[0].constraintName == "no-host-namespaces");
    CHECK(decision.violations[0].objectRef ==
          constraints::ObjectRef{"Pod", "cmsweb", "frontend"});

    request.operation = ReviewOperation::Update;
    CHECK_FALSE(constraints::review(request, constraints10).allowed);

    // Deletes always pass, violations still reported for visibility.
    constraints::ReviewRequest del;
    del.operation = ReviewOperation::Delete;
    del.oldObject = manifest::ParsedManifest(badPod);
    decision = constraints::review(del, constraints10);
    CHECK(decision.allowed);
    CHECK(decision.violations.size() == 1);

    // Warn and dryrun report without blocking.
    auto warn = constraintOf(json::parse(
        R"({"name": "warned", "template": "k8spsphostnamespaces", "enforcementAction": "warn"})"));
    auto dryrun = constraintOf(json::parse(
        R"({"name": "dry", "template": "k8spsphostnamespaces", "enforcementAction": "dryrun"})"));
    decision = constraints::review(testing::createRequest(badPod), {warn, dryrun});
    CHECK(decision.allowed);
    REQUIRE(decision.violations.size() == 2);
    CHECK((decision.violations[0].enforcementAction == EnforcementAction::Warn));
    CHECK((decision.violations[1].enforcementAction == EnforcementAction::Dryrun));

    constraints::ReviewRequest empty;
    CHECK_THROWS_WITH_AS(constraints::review(empty, constraints10),
                         doctest::Contains("carries no object"), ValidationError);
}

TEST_CASE("audit over the seeded fixture finds exactly the five violations") {
    const auto state = manifest::loadClusterState(
        (testing::fixturesDir() / "cluster" / "audit-state.json").string());
    const auto constraints10 = constraints::loadConstraintsDir(
        fixtureConstraintsDir(), constraints::TemplateRegistry::builtin());
    const auto report = constraints::audit(state, constraints10);

    CHECK(report.total == 5);
    REQUIRE(report.perConstraint.size() == 10); // one entry per constraint, even when clean

    auto only = [&](const char* constraint) -> const constraints::Violation& {
        const auto& list = report.perConstraint.at(constraint);
        REQUIRE(list.size() == 1);
        return list.front();
    };
    CHECK(only("repo-is-cmsweb").objectRef.name == "rogue-image");
    CHECK(only("probes-required").objectRef.name == "no-readiness");
    CHECK(only("probes-required").message == "container \"app\" is missing readinessProbe");
    CHECK(only("no-host-namespaces").objectRef.name == "host-pid");
    CHECK(only("replicas-within-range").objectRef.name == "overscaled");
    CHECK(only("replicas-within-range").objectRef.kind == "Deployment");
    CHECK(only("no-anonymous-bindings").objectRef.name == "anonymous-binding");
    for (const char* clean : {"capabilities-restricted", "container-limits-bounded",
                              "container-requests-bounded", "containers-declare-resources",
                              "limit-request-ratio-max-2"})
        CHECK(report.perConstraint.at(clean).empty());

    const auto doc = constraints::toJson(report);
    CHECK(doc["total"] == 5);
    CHECK(doc["perConstraint"].size() == 10);
    CHECK(doc["perConstraint"]["container-limits-bounded"].is_array());
    const auto& v = doc["perConstraint"]["repo-is-cmsweb"][0];
    CHECK(v["kind"] == "Pod");
    CHECK(v["namespace"] == "cmsweb");
    CHECK(v["name"] == "rogue-image");
    CHECK(v["enforcementAction"] == "deny");
    CHECK(v["message"].get<std::string>().find("docker.io") != std::string::npos);
}

TEST_CASE("audit output is deterministic and ordered by object") {
    const auto state = manifest::loadClusterState(
        (testing::fixturesDir() / "cluster" / "audit-state.json").string());
    const auto constraints10 = constraints::loadConstraintsDir(
        fixtureConstraintsDir(), constraints::TemplateRegistry::builtin());
    const auto first = constraints::toJson(constraints::audit(state, constraints10)).dump();
    for (int i = 0; i < 9; ++i)
        CHECK(constraints::toJson(constraints::audit(state, constraints10)).dump() == first);

    // Violations under one constraint sort by (namespace, name).
    model::ClusterState multi;
    multi.namespaces.push_back({"zz", {{"kubernetes.io/metadata.name", "zz"}}});
    multi.namespaces.push_back({"aa", {{"kubernetes.io/metadata.name", "aa"}}});
    for (const char* name : {"zeta", "alpha"}) {
        for (const char* ns : {"zz", "aa"}) {
            auto pod = testing::compliantPod(ns, name);
            pod.hostPID = true;
            multi.pods.push_back(pod);
        }
    }
    const auto hostns = constraintOf(
        json::parse(R"({"name": "hostns", "template": "k8spsphostnamespaces"})"));
    const auto report = constraints::audit(multi, {hostns});
    const auto& list = report.perConstraint.at("hostns");
    REQUIRE(list.size() == 4);
    CHECK(list[0].objectRef == constraints::ObjectRef{"Pod", "aa", "alpha"});
    CHECK(list[1].objectRef == constraints::ObjectRef{"Pod", "aa", "zeta"});
    CHECK(list[2].objectRef == constraints::ObjectRef{"Pod", "zz", "alpha"});
    CHECK(list[3].objectRef == constraints::ObjectRef{"Pod", "zz", "zeta"});
}

TEST_CASE("removing a constraint never adds violations elsewhere") {
    const auto state = manifest::loadClusterState(
        (testing::fixturesDir() / "cluster" / "audit-state.json").string());
    const auto all = constraints::loadConstraintsDir(fixtureConstraintsDir(),
                                                     constraints::TemplateRegistry::builtin());
    const auto fullReport = constraints::audit(state, all);
    for (std::size_t skip = 0; skip < all.size(); ++skip) {
        std::vector<Constraint> subset;
        for (std::size_t i = 0; i < all.size(); ++i)
            if (i != skip)
                subset.push_back(all[i]);
        const auto subReport = constraints::audit(state, subset);
        CHECK(subReport.total <= fullReport.total);
        for (const auto& c : subset)
            CHECK(subReport.perConstraint.at(c.name) == fullReport.perConstraint.at(c.name));
        CHECK(subReport.perConstraint.count(all[skip].name) == 0);
    }
}

TEST_CASE("review and audit agree on every fixture object") {
    const auto state = manifest::loadClusterState(
        (testing::fixturesDir() / "cluster" / "audit-state.json").string());
    const auto constraints10 = constraints::loadConstraintsDir(
        fixtureConstraintsDir(), constraints::TemplateRegistry::builtin());
    const auto report = constraints::audit(state, constraints10);

    auto violationsFor = [&](const std::string& kind, const std::string& name) {
        std::vector<constraints::Violation> out;
        for (const auto& [cname, list] : report.perConstraint)
            for (const auto& v : list)
                if (v.objectRef.kind == kind && v.objectRef.name == name)
                    out.push_back(v);
        return out;
    };

    for (const auto& pod : state.pods) {
        const auto decision =
            constraints::review(testing::createRequest(pod), constraints10);
        auto expected = violationsFor("Pod", pod.name);
        CHECK(decision.allowed == expected.empty());
        CHECK(decision.violations.size() == expected.size());
        for (const auto& v : decision.violations)
            CHECK(std::find(expected.begin(), expected.end(), v) != expected.end());
    }
    for (const auto& object : state.objects) {
        const auto decision =
            constraints::review(testing::createRequest(object), constraints10);
        const auto expected = violationsFor(toString(object.kind), object.name);
        CHECK(decision.allowed == expected.empty());
        CHECK(decision.violations.size() == expected.size());
    }
}
