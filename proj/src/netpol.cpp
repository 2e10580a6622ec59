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

#include "clustergate/netpol.hpp"

#include <charconv>

#include "clustergate/errors.hpp"
#include "clustergate/labels.hpp"

namespace clustergate::netpol {

using namespace clustergate::model;

Endpoint Endpoint::pod(std::string ns, std::string name) {
    Endpoint e;
    e.ns = std::move(ns);
    e.name = std::move(name);
    return e;
}

Endpoint Endpoint::external(std::string ip) {
    Endpoint e;
    e.ip = std::move(ip);
    return e;
}

Endpoint parseEndpoint(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::string ns = text.substr(0, slash);
        std::string name = text.substr(slash + 1);
        if (ns.empty() || name.empty() || name.find('/') != std::string::npos)
            throw ParseError("endpoint \"" + text + "\" must be namespace/pod or an IPv4 address");
        return Endpoint::pod(std::move(ns), std::move(name));
    }
    parseIpv4(text); // validates
    return Endpoint::external(text);
}

std::string toString(const Endpoint& endpoint) {
    return endpoint.isPod() ? endpoint.ns + "/" + endpoint.name : endpoint.ip;
}

std::uint32_t parseIpv4(const std::string& text) {
    std::uint32_t result = 0;
    const char* p = text.data();
    const char* end = p + text.size();
    for (int octet = 0; octet < 4; ++octet) {
        unsigned value = 0;
        auto [next, ec] = std::from_chars(p, end, value);
        if (ec != std::errc() || next == p || value > 255)
            throw ParseError("invalid IPv4 address \"" + text + "\"");
        result = (result << 8) | value;
        p = next;
        if (octet < 3) {
            if (p == end || *p != '.')
                throw ParseError("invalid IPv4 address \"" + text + "\"");
            ++p;
        }
    }
    if (p != end)
        throw ParseError("invalid IPv4 address \"" + text + "\"");
    return result;
}

bool cidrContains(const std::string& cidr, std::uint32_t ip) {
    auto slash = cidr.find('/');
    if (slash == std::string::npos)
        throw ParseError("invalid CIDR \"" + cidr + "\": missing prefix length");
    const std::uint32_t base = parseIpv4(cidr.substr(0, slash));
    int len = -1;
    const char* p = cidr.data() + slash + 1;
    const char* end = cidr.data() + cidr.size();
    auto [next, ec] = std::from_chars(p, end, len);
    if (ec != std::errc() || next != end || len < 0 || len > 32)
        throw ParseError("invalid CIDR \"" + cidr + "\": bad prefix length");
    if (len == 0)
        return true;
    const std::uint32_t mask = ~std::uint32_t{0} << (32 - len);
    return (base & mask) == (ip & mask);
}

namespace {

const Pod& requirePod(const ClusterState& state, const std::string& ns, const std::string& name) {
    const Pod* pod = state.findPod(ns, name);
    if (!pod)
        throw NotFoundError("unknown pod " + ns + "/" + name);
    return *pod;
}

bool ipBlockMatches(const IpBlock& block, const std::string& ipText) {
    const std::uint32_t ip = parseIpv4(ipText);
    if (!cidrContains(block.cidr, ip))
        return false;
    for (const auto& ex : block.except)
        if (cidrContains(ex, ip))
            return false;
    return true;
}

// `other` is the remote end of the connection as seen from the policy's pod.
bool peerMatches(const ClusterState& state, const NetworkPolicy& policy, const PolicyPeer& peer,
                 const Endpoint& other) {
    if (peer.ipBlock)
        return !other.isPod() && ipBlockMatches(*peer.ipBlock, other.ip);
    if (!other.isPod())
        return false;
    const Pod& pod = requirePod(state, other.ns, other.name);
    if (peer.namespaceSelector) {
        const NamespaceInfo* info = state.findNamespace(pod.ns);
        if (!info || !selectorMatches(*peer.namespaceSelector, info->labels))
            return false;
    } else if (pod.ns != policy.ns) {
        // A lone podSelector is scoped to the policy's own namespace.
        return false;
    }
    return !peer.podSelector || selectorMatches(*peer.podSelector, pod.labels);
}

bool ruleAdmits(const ClusterState& state, const NetworkPolicy& policy, const PolicyRule& rule,
                const Endpoint& other, int port, Protocol protocol) {
    if (!rule.ports.empty()) {
        bool portOk = false;
        for (const auto& p : rule.ports)
            portOk = portOk || (p.protocol == protocol && p.port == port);
        if (!portOk)
            return false;
    }
    if (rule.peers.empty())
        return true;
    for (const auto& peer : rule.peers)
        if (peerMatches(state, policy, peer, other))
            return true;
    return false;
}

// Evaluates one direction for the pod endpoint `self`, appending trace
// entries for every (selecting policy, rule) pair considered.
bool directionAllowed(const ClusterState& state, const Endpoint& self, const Endpoint& other,
                      Direction direction, int port, Protocol protocol,
                      std::vector<TraceEntry>& trace) {
    if (!self.isPod())
        return true;
    auto selecting = policiesSelecting(state, self.ns, self.name, direction);
    if (selecting.empty())
        return true;
    bool admitted = false;
    for (const NetworkPolicy* policy : selecting) {
        const auto& rules =
            direction == Direction::Ingress ? policy->ingressRules : policy->egressRules;
        const std::string id = policy->ns + "/" + policy->name;
        if (rules.empty()) {
            trace.push_back(TraceEntry{direction, id, -1, false});
            continue;
        }
        for (std::size_t i = 0; i < rules.size(); ++i) {
            const bool matched = ruleAdmits(state, *policy, rules[i], other, port, protocol);
            trace.push_back(TraceEntry{direction, id, static_cast<int>(i), matched});
            admitted = admitted || matched;
        }
    }
    return admitted;
}

} // namespace

std::vector<const NetworkPolicy*> policiesSelecting(const ClusterState& state,
                                                    const std::string& ns,
                                                    const std::string& podName,
                                                    Direction direction) {
    const Pod& pod = requirePod(state, ns, podName);
    std::vector<const NetworkPolicy*> out;
    for (const auto& policy : state.networkPolicies) {
        if (policy.ns != pod.ns)
            continue;
        if (!policy.policyTypes.count(direction))
            continue;
        if (!selectorMatches(policy.podSelector, pod.labels))
            continue;
        out.push_back(&policy);
    }
    return out;
}

Verdict evaluate(const ClusterState& state, const TrafficQuery& query) {
    if (!query.src.isPod() && !query.dst.isPod())
        throw ValidationError("at least one endpoint must be a pod");
    if (query.src == query.dst)
        throw ValidationError("source and destination must differ");
    if (query.port < 1 || query.port > 65535)
        throw ValidationError("port " + std::to_string(query.port) + " out of range");
    if (query.src.isPod())
        requirePod(state, query.src.ns, query.src.name);
    if (query.dst.isPod())
        requirePod(state, query.dst.ns, query.dst.name);
    if (!query.src.isPod())
        parseIpv4(query.src.ip);
    if (!query.dst.isPod())
        parseIpv4(query.dst.ip);

    Verdict v;
    v.egressAllowed = directionAllowed(state, query.src, query.dst, Direction::Egress, query.port,
                                       query.protocol, v.trace);
    v.ingressAllowed = directionAllowed(state, query.dst, query.src, Direction::Ingress,
                                        query.port, query.protocol, v.trace);
    v.allowed = v.egressAllowed && v.ingressAllowed;
    return v;
}

nlohmann::json toJson(const TraceEntry& entry) {
    return nlohmann::json{{"direction", toString(entry.direction)},
                          {"policy", entry.policy},
                          {"ruleIndex", entry.ruleIndex},
                          {"matched", entry.matched}};
}

nlohmann::json toJson(const Verdict& verdict) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& entry : verdict.trace)
        trace.push_back(toJson(entry));
    return nlohmann::json{{"allowed", verdict.allowed},
                          {"egressAllowed", verdict.egressAllowed},
                          {"ingressAllowed", verdict.ingressAllowed},
                          {"trace", trace}};
}

} // namespace clustergate::netpol
