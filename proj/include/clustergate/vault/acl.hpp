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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace clustergate::vault {

inline const std::set<std::string>& allCapabilities() {
    static const std::set<std::string> caps{"create", "read", "update", "delete", "list"};
    return caps;
}

struct PolicyRule {
    std::string pathPattern; // mount-qualified, e.g. "cmsweb/crab/*"
    std::set<std::string> capabilities;

    bool operator==(const PolicyRule&) const = default;
};

struct PolicyDoc {
    std::string name;
    std::vector<PolicyRule> rules; // non-empty
    // Reserved for time-based access policies; parsed but not yet enforced.
    std::optional<std::int64_t> rateLimitPerDay;

    bool operator==(const PolicyDoc&) const = default;
};

// Throws ValidationError on empty rules, unknown capabilities, or malformed
// patterns (empty segments, embedded whitespace).
void validatePolicyDoc(const PolicyDoc& doc);

nlohmann::json toJson(const PolicyDoc& doc);
PolicyDoc policyDocFromJson(const std::string& name, const nlohmann::json& body);

// Segment glob: both strings split on '/', counts must be equal, and each
// pattern segment is either the literal "*" (matches exactly one segment)
// or must compare equal.
bool patternMatches(const std::string& pattern, const std::string& path);

bool policyAllows(const PolicyDoc& doc, const std::string& capability, const std::string& path);

} // namespace clustergate::vault
