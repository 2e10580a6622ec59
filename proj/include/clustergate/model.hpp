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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "clustergate/labels.hpp"
#include "clustergate/quantity.hpp"

// Canonical data model for cluster objects. All types are immutable value
// records after construction and safe to share across concurrent evaluators.

namespace clustergate::model {

using ResourceMap = std::map<std::string, Quantity>; // keys: "cpu", "memory"

struct VolumeMount {
    std::string name;
    std::string mountPath;

    bool operator==(const VolumeMount&) const = default;
};

struct Container {
    std::string name;
    std::string image;
    ResourceMap requests; // empty map = unset
    ResourceMap limits;
    std::optional<nlohmann::json> readinessProbe; // opaque probe records
    std::optional<nlohmann::json> livenessProbe;
    std::vector<std::string> capabilitiesAdd;
    std::vector<std::string> capabilitiesDrop;
    std::vector<VolumeMount> volumeMounts;

    bool operator==(const Container&) const = default;
};

// Only emptyDir volumes are modeled; medium is "" or "Memory".
struct Volume {
    std::string name;
    std::string medium;

    bool operator==(const Volume&) const = default;
};

struct Pod {
    std::string name;
    std::string ns;
    LabelMap labels;
    std::string serviceAccount = "default";
    std::map<std::string, std::string> annotations;
    std::vector<Container> containers; // non-empty
    std::vector<Container> initContainers;
    std::vector<Volume> volumes;
    bool hostPID = false;
    bool hostIPC = false;
    std::optional<std::string> podIP; // IPv4 dotted quad

    bool operator==(const Pod&) const = default;
};

enum class WorkloadKind { Pod, Deployment, ReplicaSet, StatefulSet, RoleBinding, ClusterRoleBinding };

const char* toString(WorkloadKind kind);
std::optional<WorkloadKind> workloadKindFromString(const std::string& s);
bool isBindingKind(WorkloadKind kind);
bool isReplicatedKind(WorkloadKind kind);

struct BindingSubject {
    std::string kind; // User | Group | ServiceAccount
    std::string name;

    bool operator==(const BindingSubject&) const = default;
};

struct WorkloadObject {
    WorkloadKind kind = WorkloadKind::Deployment;
    std::string name;
    std::string ns;
    LabelMap labels;
    std::map<std::string, std::string> annotations;
    std::optional<std::int64_t> replicas;  // replicated kinds only
    std::optional<Pod> podTemplate;        // name/ns empty inside a template
    std::vector<BindingSubject> subjects;  // binding kinds only

    bool operator==(const WorkloadObject&) const = default;
};

// Network policy objects. Evaluation semantics live in netpol.hpp.

enum class Protocol { TCP, UDP };
enum class Direction { Ingress, Egress };

const char* toString(Protocol p);
const char* toString(Direction d);

struct IpBlock {
    std::string cidr;                // IPv4 CIDR
    std::vector<std::string> except; // subtracted exactly

    bool operator==(const IpBlock&) const = default;
};

// Exactly one of (podSelector and/or namespaceSelector) | ipBlock. When both
// selectors are present they conjoin; a lone podSelector is scoped to the
// policy's own namespace; ipBlock matches only endpoints outside the modeled
// pod set.
struct PolicyPeer {
    std::optional<Selector> podSelector;
    std::optional<Selector> namespaceSelector;
    std::optional<IpBlock> ipBlock;

    bool operator==(const PolicyPeer&) const = default;
};

struct RulePort {
    Protocol protocol = Protocol::TCP;
    int port = 0; // 1..65535

    bool operator==(const RulePort&) const = default;
};

// A rule admits a (peer, port) iff the peer matches some entry of `peers`
// (or peers is empty) and the port matches some entry of `ports` (or ports
// is empty).
struct PolicyRule {
    std::vector<PolicyPeer> peers;
    std::vector<RulePort> ports;

    bool operator==(const PolicyRule&) const = default;
};

struct NetworkPolicy {
    std::string name;
    std::string ns;
    Selector podSelector;
    std::set<Direction> policyTypes;
    std::vector<PolicyRule> ingressRules;
    std::vector<PolicyRule> egressRules;

    bool operator==(const NetworkPolicy&) const = default;
};

struct NamespaceInfo {
    std::string name;
    LabelMap labels;

    bool operator==(const NamespaceInfo&) const = default;
};

struct ClusterState {
    std::vector<NamespaceInfo> namespaces;
    std::vector<Pod> pods;
    std::vector<WorkloadObject> objects;
    std::vector<NetworkPolicy> networkPolicies;

    const NamespaceInfo* findNamespace(const std::string& name) const;
    const Pod* findPod(const std::string& ns, const std::string& name) const;

    bool operator==(const ClusterState&) const = default;
};

// Checks the cross-object invariants: namespaces exist for every pod,
// (namespace, name) unique, pod IPs unique when set, container names unique
// within each pod. Throws ValidationError.
void validate(const ClusterState& state);
void validate(const Pod& pod);
void validate(const WorkloadObject& object);

} // namespace clustergate::model
