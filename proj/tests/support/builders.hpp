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
//
// Object builders shared by constraint, admission and acceptance tests. The
// compliant shapes satisfy every constraint in fixtures/constraints; each
// violating variant trips exactly the check it is named after.

#pragma once

#include <string>

#include <json.hpp>

#include "clustergate/constraints.hpp"
#include "clustergate/model.hpp"
#include "clustergate/quantity.hpp"

namespace clustergate::testing {

inline model::Container compliantContainer(const std::string& name = "app") {
    using model::ResourceKind;
    model::Container c;
    c.name = name;
    c.image = "registry.cern.ch/cmsweb/" + name + ":latest";
    c.requests["cpu"] = model::parseQuantity("100m", ResourceKind::Cpu);
    c.requests["memory"] = model::parseQuantity("128Mi", ResourceKind::Memory);
    c.limits["cpu"] = model::parseQuantity("200m", ResourceKind::Cpu);
    c.limits["memory"] = model::parseQuantity("256Mi", ResourceKind::Memory);
    c.readinessProbe = nlohmann::json{{"httpGet", {{"path", "/healthz"}, {"port", 8080}}}};
    c.livenessProbe = nlohmann::json{{"httpGet", {{"path", "/healthz"}, {"port", 8080}}}};
    return c;
}

inline model::Pod compliantPod(const std::string& ns = "cmsweb",
                               const std::string& name = "frontend") {
    model::Pod pod;
    pod.name = name;
    pod.ns = ns;
    pod.labels = {{"app", name}};
    pod.containers.push_back(compliantContainer(name));
    return pod;
}

inline model::WorkloadObject compliantDeployment(const std::string& ns = "cmsweb",
                                                 const std::string& name = "frontend",
                                                 std::int64_t replicas = 3) {
    model::WorkloadObject d;
    d.kind = model::WorkloadKind::Deployment;
    d.name = name;
    d.ns = ns;
    d.replicas = replicas;
    model::Pod tmpl;
    tmpl.ns = ns;
    tmpl.labels = {{"app", name}};
    tmpl.containers.push_back(compliantContainer(name));
    d.podTemplate = std::move(tmpl);
    return d;
}

inline model::WorkloadObject roleBinding(const std::string& ns, const std::string& name,
                                         const std::string& subjectKind,
                                         const std::string& subjectName) {
    model::WorkloadObject b;
    b.kind = model::WorkloadKind::RoleBinding;
    b.name = name;
    b.ns = ns;
    b.subjects.push_back(model::BindingSubject{subjectKind, subjectName});
    return b;
}

inline constraints::ReviewRequest createRequest(manifest::ParsedManifest object) {
    constraints::ReviewRequest request;
    request.operation = constraints::ReviewOperation::Create;
    request.object = std::move(object);
    return request;
}

} // namespace clustergate::testing
