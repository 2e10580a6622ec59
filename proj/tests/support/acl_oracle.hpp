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
// Regex-based reference for path pattern matching. Deliberately shares no
// mechanism with the segment-splitting matcher under test: the pattern is
// compiled to an anchored regex where "*" becomes one slash-free segment.

#pragma once

#include <regex>
#include <string>

#include "clustergate/vault/acl.hpp"

namespace clustergate::testing {

inline bool oraclePatternMatches(const std::string& pattern, const std::string& path) {
    std::string re;
    std::string segment;
    auto flush = [&] {
        if (segment == "*") {
            re += "[^/]+";
        } else {
            for (char c : segment) {
                if (c == '.')
                    re += '\\';
                re += c;
            }
        }
        segment.clear();
    };
    for (char c : pattern) {
        if (c == '/') {
            flush();
            re += '/';
        } else {
            segment += c;
        }
    }
    flush();
    return std::regex_match(path, std::regex("^" + re + "$"));
}

inline bool oraclePolicyAllows(const vault::PolicyDoc& doc, const std::string& capability,
                               const std::string& path) {
    for (const auto& rule : doc.rules) {
        if (rule.capabilities.count(capability) != 0 && oraclePatternMatches(rule.pathPattern, path))
            return true;
    }
    return false;
}

} // namespace clustergate::testing
