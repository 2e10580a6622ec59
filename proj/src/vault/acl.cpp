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

#include "clustergate/vault/acl.hpp"

#include <cctype>

#include "clustergate/errors.hpp"

namespace clustergate::vault {

using nlohmann::json;

namespace {

std::vector<std::string> splitSegments(const std::string& path) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= path.size()) {
        const std::size_t slash = path.find('/', start);
        if (slash == std::string::npos) {
            out.push_back(path.substr(start));
            break;
        }
        out.push_back(path.substr(start, slash - start));
        start = slash + 1;
    }
    return out;
}

} // namespace

void validatePolicyDoc(const PolicyDoc& doc) {
    if (doc.name.empty())
        throw ValidationError("policy has no name");
    if (doc.rules.empty())
        throw ValidationError("policy \"" + doc.name + "\" has no rules");
    for (const auto& rule : doc.rules) {
        if (rule.capabilities.empty())
            throw ValidationError("policy \"" + doc.name + "\" has a rule with no capabilities");
        for (const auto& cap : rule.capabilities)
            if (!allCapabilities().count(cap))
                throw ValidationError("policy \"" + doc.name + "\" uses unknown capability \"" +
                                      cap + "\"");
        if (rule.pathPattern.empty())
            throw ValidationError("policy \"" + doc.name + "\" has an empty path pattern");
        for (const auto& segment : splitSegments(rule.pathPattern)) {
            if (segment.empty())
                throw ValidationError("policy \"" + doc.name + "\" pattern \"" +
                                      rule.pathPattern + "\" has an empty segment");
            for (char c : segment)
                if (std::isspace(static_cast<unsigned char>(c)))
                    throw ValidationError("policy \"" + doc.name + "\" pattern \"" +
                                          rule.pathPattern + "\" contains whitespace");
        }
    }
}

json toJson(const PolicyDoc& doc) {
    json rules = json::array();
    for (const auto& rule : doc.rules) {
        json caps = json::array();
        for (const auto& cap : rule.capabilities)
            caps.push_back(cap);
        rules.push_back(json{{"path", rule.pathPattern}, {"capabilities", caps}});
    }
    json out{{"name", doc.name}, {"rules", rules}};
    if (doc.rateLimitPerDay)
        out["rateLimitPerDay"] = *doc.rateLimitPerDay;
    return out;
}

PolicyDoc policyDocFromJson(const std::string& name, const json& body) {
    PolicyDoc doc;
    doc.name = name;
    if (!body.is_object() || !body.contains("rules") || !body.at("rules").is_array())
        throw ValidationError("policy body must carry a \"rules\" list");
    for (const auto& r : body.at("rules")) {
        PolicyRule rule;
        rule.pathPattern = r.at("path").get<std::string>();
        for (const auto& cap : r.at("capabilities"))
            rule.capabilities.insert(cap.get<std::string>());
        doc.rules.push_back(std::move(rule));
    }
    if (body.contains("rateLimitPerDay") && !body.at("rateLimitPerDay").is_null())
        doc.rateLimitPerDay = body.at("rateLimitPerDay").get<std::int64_t>();
    validatePolicyDoc(doc);
    return doc;
}

bool patternMatches(const std::string& pattern, const std::string& path) {
    const auto patternSegments = splitSegments(pattern);
    const auto pathSegments = splitSegments(path);
    if (patternSegments.size() != pathSegments.size())
        return false;
    for (std::size_t i = 0; i < patternSegments.size(); ++i) {
        if (patternSegments[i] == "*")
            continue;
        if (patternSegments[i] != pathSegments[i])
            return false;
    }
    return true;
}

bool policyAllows(const PolicyDoc& doc, const std::string& capability, const std::string& path) {
    for (const auto& rule : doc.rules)
        if (rule.capabilities.count(capability) && patternMatches(rule.pathPattern, path))
            return true;
    return false;
}

} // namespace clustergate::vault
