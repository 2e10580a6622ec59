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

#include "clustergate/model.hpp"

#include <set>

#include "clustergate/errors.hpp"

namespace clustergate::model {

const char* toString(WorkloadKind kind) {
    switch (kind) {
    case WorkloadKind::Pod: return "Pod";
    case WorkloadKind::Deployment: return "Deployment";
    case WorkloadKind::ReplicaSet: return "ReplicaSet";
    case WorkloadKind::StatefulSet: return "StatefulSet";
    case WorkloadKind::RoleBinding: return "RoleBinding";
    case WorkloadKind::ClusterRoleBinding: return "ClusterRoleBinding";
    }
    return "Deployment";
}

std::optional<WorkloadKind> workloadKindFromString(const std::string& s) {
    if (s == "Pod") return WorkloadKind::Pod;
    if (s == "Deployment") return WorkloadKind::Deployment;
    if (s == "ReplicaSet") return WorkloadKind::ReplicaSet;
    if (s == "StatefulSet") return WorkloadKind::StatefulSet;
    if (s == "RoleBinding") return WorkloadKind::RoleBinding;
    if (s == "ClusterRoleBinding") return WorkloadKind::ClusterRoleBinding;
    return std::nullopt;
}

bool isBindingKind(WorkloadKind kind) {
    return kind == WorkloadKind::RoleBinding || kind == WorkloadKind::ClusterRoleBinding;
}

bool isReplicatedKind(WorkloadKind kind) {
    return kind == WorkloadKind::Deployment || kind == WorkloadKind::ReplicaSet ||
           kind == WorkloadKind::StatefulSet;
}

const char* toString(Protocol p) { return p == Protocol::TCP ? "TCP" : "UDP"; }

const char* toString(Direction d) { return d == Direction::Ingress ? "Ingress" : "Egress"; }

const NamespaceInfo* ClusterState::findNamespace(const std::string& name) const {
    for (const auto& ns : namespaces)
        if (ns.name == name)
            return &ns;
    return nullptr;
}

const Pod* ClusterState::findPod(const std::string& ns, const std::string& name) const {
    for (const auto& pod : pods)
        if (pod.ns == ns && pod.name == name)
            return &pod;
    return nullptr;
}

void validate(const Pod& pod) {
    validateLabelMap(pod.labels);
    if (pod.containers.empty())
        throw ValidationError("pod \"" + pod.name + "\" has no containers");
    std::set<std::string> names;
    for (const auto* list : {&pod.containers, &pod.initContainers}) {
        for (const auto& c : *list) {
            if (c.name.empty())
                throw ValidationError("pod \"" + pod.name + "\" has a container without a name");
            if (!names.insert(c.name).second)
                throw ValidationError("pod \"" + pod.name + "\" has duplicate container name \"" +
                                      c.name + "\"");
        }
    }
}

void validate(const WorkloadObject& object) {
    validateLabelMap(object.labels);
    if (object.replicas && !isReplicatedKind(object.kind))
        throw ValidationError(std::string(toString(object.kind)) + " \"" + object.name +
                              "\" must not carry replicas");
    if (!object.subjects.empty() && !isBindingKind(object.kind))
        throw ValidationError(std::string(toString(object.kind)) + " \"" + object.name +
                              "\" must not carry subjects");
    if (object.podTemplate)
        validate(*object.podTemplate);
}

void validate(const ClusterState& state) {
    std::set<std::string> nsNames;
    for (const auto& ns : state.namespaces) {
        if (ns.name.empty())
            throw ValidationError("namespace with empty name");
        validateLabelMap(ns.labels);
        if (!nsNames.insert(ns.name).second)
            throw ValidationError("duplicate namespace \"" + ns.name + "\"");
    }
    std::set<std::pair<std::string, std::string>> podKeys;
    std::set<std::string> podIps;
    for (const auto& pod : state.pods) {
        validate(pod);
        if (!nsNames.count(pod.ns))
            throw ValidationError("pod \"" + pod.name + "\" references unknown namespace \"" +
                                  pod.ns + "\"");
        if (!podKeys.insert({pod.ns, pod.name}).second)
            throw ValidationError("duplicate pod " + pod.ns + "/" + pod.name);
        if (pod.podIP && !podIps.insert(*pod.podIP).second)
            throw ValidationError("duplicate pod IP " + *pod.podIP);
    }
    for (const auto& object : state.objects)
        validate(object);
}

} // namespace clustergate::model
