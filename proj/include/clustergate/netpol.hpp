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
#include <string>
#include <vector>

#include <json.hpp>

#include "clustergate/model.hpp"

namespace clustergate::netpol {

// One side of a connection: a pod reference (namespace + name) or an
// external IPv4 address outside the modeled pod set.
struct Endpoint {
    std::string ns;
    std::string name;
    std::string ip;

    bool isPod() const { return !name.empty(); }

    static Endpoint pod(std::string ns, std::string name);
    static Endpoint external(std::string ip);

    bool operator==(const Endpoint&) const = default;
};

// Accepts "namespace/pod" or a dotted-quad IPv4 address.
Endpoint parseEndpoint(const std::string& text);

std::string toString(const Endpoint& endpoint);

struct TrafficQuery {
    Endpoint src;
    Endpoint dst;
    int port = 0;
    model::Protocol protocol = model::Protocol::TCP;
};

// One evaluated (policy, rule) pair. ruleIndex is -1 when the policy selects
// the endpoint for the direction but declares no rules for it (isolation).
struct TraceEntry {
    model::Direction direction;
    std::string policy; // "namespace/name"
    int ruleIndex = -1;
    bool matched = false;

    bool operator==(const TraceEntry&) const = default;
};

struct Verdict {
    bool allowed = false;
    bool egressAllowed = false;
    bool ingressAllowed = false;
    std::vector<TraceEntry> trace;

    // Empty trace for a direction means no policy selected that side
    // (default allow); the fields above already account for it.
};

// Policies in the pod's namespace whose podSelector matches the pod and whose
// policyTypes contains the direction. Pointers alias into `state`.
std::vector<const model::NetworkPolicy*> policiesSelecting(const model::ClusterState& state,
                                                           const std::string& ns,
                                                           const std::string& podName,
                                                           model::Direction direction);

// Decides a single logical connection. Each direction is allowed when no
// policy selects its pod endpoint, or when any rule of any selecting policy
// admits the (peer, port). External endpoints are never policy-selected.
Verdict evaluate(const model::ClusterState& state, const TrafficQuery& query);

nlohmann::json toJson(const TraceEntry& entry);
nlohmann::json toJson(const Verdict& verdict);

// IPv4 helpers (host byte order). parseIpv4 throws ParseError on bad input.
std::uint32_t parseIpv4(const std::string& text);
bool cidrContains(const std::string& cidr, std::uint32_t ip);

} // namespace clustergate::netpol
