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
// Reference evaluator for traffic queries, kept deliberately naive: it
// enumerates every policy, rule and peer with its own selector matching and
// inet_pton-based CIDR math, sharing nothing with the production engine
// beyond the data model. Used as the equivalence oracle in tests.

#pragma once

#include <arpa/inet.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "clustergate/model.hpp"
#include "clustergate/netpol.hpp"

namespace clustergate::testing {

struct OracleVerdict {
    bool ingressAllowed = false;
    bool egressAllowed = false;
    bool allowed = false;
};

namespace oracle_detail {

using namespace clustergate::model;

inline bool selectorMatchesNaive(const Selector& sel, const LabelMap& labels) {
    for (const auto& [key, value] : sel.matchLabels) {
        auto it = labels.find(key);
        if (it == labels.end() || it->second != value)
            return false;
    }
    for (const auto& req : sel.matchExpressions) {
        auto it = labels.find(req.key);
        const bool present = it != labels.end();
        switch (req.op) {
        case SelectorOp::In:
            if (!present || std::find(req.values.begin(), req.values.end(), it->second) ==
                                req.values.end())
                return false;
            break;
        case SelectorOp::NotIn:
            if (present && std::find(req.values.begin(), req.values.end(), it->second) !=
                               req.values.end())
                return false;
            break;
        case SelectorOp::Exists:
            if (!present)
                return false;
            break;
        case SelectorOp::DoesNotExist:
            if (present)
                return false;
            break;
        }
    }
    return true;
}

inline std::uint32_t ipNaive(const std::string& text) {
    in_addr addr{};
    if (inet_pton(AF_INET, text.c_str(), &addr) != 1)
        throw std::runtime_error("oracle: bad IPv4 " + text);
    return ntohl(addr.s_addr);
}

inline bool cidrContainsNaive(const std::string& cidr, std::uint32_t ip) {
    auto slash = cidr.find('/');
    if (slash == std::string::npos)
        throw std::runtime_error("oracle: bad CIDR " + cidr);
    const std::uint32_t base = ipNaive(cidr.substr(0, slash));
    const int len = std::stoi(cidr.substr(slash + 1));
    if (len < 0 || len > 32)
        throw std::runtime_error("oracle: bad prefix length in " + cidr);
    if (len == 0)
        return true;
    const std::uint32_t mask = ~std::uint32_t{0} << (32 - len);
    return (base & mask) == (ip & mask);
}

inline const LabelMap& namespaceLabels(const ClusterState& state, const std::string& ns) {
    for (const auto& info : state.namespaces)
        if (info.name == ns)
            return info.labels;
    throw std::runtime_error("oracle: unknown namespace " + ns);
}

inline const Pod& findPodOrThrow(const ClusterState& state, const std::string& ns,
                                 const std::string& name) {
    for (const auto& pod : state.pods)
        if (pod.ns == ns && pod.name == name)
            return pod;
    throw std::runtime_error("oracle: unknown pod " + ns + "/" + name);
}

inline bool peerMatchesNaive(const ClusterState& state, const std::string& policyNs,
                             const PolicyPeer& peer, const netpol::Endpoint& other) {
    if (peer.ipBlock) {
        if (other.isPod())
            return false;
        const std::uint32_t ip = ipNaive(other.ip);
        if (!cidrContainsNaive(peer.ipBlock->cidr, ip))
            return false;
        for (const auto& ex : peer.ipBlock->except)
            if (cidrContainsNaive(ex, ip))
                return false;
        return true;
    }
    if (!other.isPod())
        return false;
    const Pod& pod = findPodOrThrow(state, other.ns, other.name);
    if (peer.namespaceSelector) {
        if (!selectorMatchesNaive(*peer.namespaceSelector, namespaceLabels(state, pod.ns)))
            return false;
    } else {
        if (pod.ns != policyNs)
            return false;
    }
    if (peer.podSelector && !selectorMatchesNaive(*peer.podSelector, pod.labels))
        return false;
    return true;
}

inline bool ruleAdmitsNaive(const ClusterState& state, const std::string& policyNs,
                            const PolicyRule& rule, const netpol::Endpoint& other, int port,
                            Protocol protocol) {
    bool portOk = rule.ports.empty();
    for (const auto& p : rule.ports)
        if (p.protocol == protocol && p.port == port)
            portOk = true;
    if (!portOk)
        return false;
    if (rule.peers.empty())
        return true;
    for (const auto& peer : rule.peers)
        if (peerMatchesNaive(state, policyNs, peer, other))
            return true;
    return false;
}

// Allowed in `direction` for the pod endpoint `self` talking to `other`.
inline bool directionAllowedNaive(const ClusterState& state, const netpol::Endpoint& self,
                                  const netpol::Endpoint& other, Direction direction, int port,
                                  Protocol protocol) {
    if (!self.isPod())
        return true;
    const Pod& pod = findPodOrThrow(state, self.ns, self.name);
    bool selected = false;
    bool admitted = false;
    for (const auto& policy : state.networkPolicies) {
        if (policy.ns != pod.ns)
            continue;
        if (!policy.policyTypes.count(direction))
            continue;
        if (!selectorMatchesNaive(policy.podSelector, pod.labels))
            continue;
        selected = true;
        const auto& rules =
            direction == Direction::Ingress ? policy.ingressRules : policy.egressRules;
        for (const auto& rule : rules)
            if (ruleAdmitsNaive(state, policy.ns, rule, other, port, protocol))
                admitted = true;
    }
    return !selected || admitted;
}

} // namespace oracle_detail

inline OracleVerdict oracleEvaluate(const model::ClusterState& state,
                                    const netpol::TrafficQuery& query) {
    OracleVerdict v;
    v.ingressAllowed = oracle_detail::directionAllowedNaive(
        state, query.dst, query.src, model::Direction::Ingress, query.port, query.protocol);
    v.egressAllowed = oracle_detail::directionAllowedNaive(
        state, query.src, query.dst, model::Direction::Egress, query.port, query.protocol);
    v.allowed = v.ingressAllowed && v.egressAllowed;
    return v;
}

} // namespace clustergate::testing
