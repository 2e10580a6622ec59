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

#include <map>
#include <string>
#include <vector>

namespace clustergate::model {

// Keys are non-empty; keys and values contain no whitespace. Enforced by
// validateLabelMap at every parse boundary.
using LabelMap = std::map<std::string, std::string>;

void validateLabelMap(const LabelMap& labels);

enum class SelectorOp { In, NotIn, Exists, DoesNotExist };

const char* toString(SelectorOp op);
SelectorOp selectorOpFromString(const std::string& s);

struct SelectorRequirement {
    std::string key;
    SelectorOp op = SelectorOp::In;
    std::vector<std::string> values; // empty for Exists/DoesNotExist

    bool operator==(const SelectorRequirement&) const = default;
};

// An empty selector (no labels, no expressions) matches everything.
struct Selector {
    LabelMap matchLabels;
    std::vector<SelectorRequirement> matchExpressions;

    bool empty() const { return matchLabels.empty() && matchExpressions.empty(); }
    bool operator==(const Selector&) const = default;
};

// Throws ValidationError for In/NotIn without values or Exists/DoesNotExist
// with values.
void validateSelector(const Selector& sel);

// True iff every matchLabels entry is present with equal value and every
// expression holds. Total on valid selectors.
bool selectorMatches(const Selector& sel, const LabelMap& labels);

} // namespace clustergate::model
