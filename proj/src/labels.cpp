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

#include "clustergate/labels.hpp"

#include <algorithm>
#include <cctype>

#include "clustergate/errors.hpp"

namespace clustergate::model {

namespace {

bool hasWhitespace(const std::string& s) {
    return std::any_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

} // namespace

void validateLabelMap(const LabelMap& labels) {
    for (const auto& [key, value] : labels) {
        if (key.empty())
            throw ValidationError("label key must not be empty");
        if (hasWhitespace(key))
            throw ValidationError("label key \"" + key + "\" contains whitespace");
        if (hasWhitespace(value))
            throw ValidationError("label value \"" + value + "\" for key \"" + key +
                                  "\" contains whitespace");
    }
}

const char* toString(SelectorOp op) {
    switch (op) {
    case SelectorOp::In: return "In";
    case SelectorOp::NotIn: return "NotIn";
    case SelectorOp::Exists: return "Exists";
    case SelectorOp::DoesNotExist: return "DoesNotExist";
    }
    return "In";
}

SelectorOp selectorOpFromString(const std::string& s) {
    if (s == "In") return SelectorOp::In;
    if (s == "NotIn") return SelectorOp::NotIn;
    if (s == "Exists") return SelectorOp::Exists;
    if (s == "DoesNotExist") return SelectorOp::DoesNotExist;
    throw ParseError("unknown selector operator \"" + s + "\"");
}

void validateSelector(const Selector& sel) {
    validateLabelMap(sel.matchLabels);
    for (const auto& req : sel.matchExpressions) {
        if (req.key.empty())
            throw ValidationError("selector expression key must not be empty");
        switch (req.op) {
        case SelectorOp::In:
        case SelectorOp::NotIn:
            if (req.values.empty())
                throw ValidationError("selector expression " + std::string(toString(req.op)) +
                                      " on key \"" + req.key + "\" requires values");
            break;
        case SelectorOp::Exists:
        case SelectorOp::DoesNotExist:
            if (!req.values.empty())
                throw ValidationError("selector expression " + std::string(toString(req.op)) +
                                      " on key \"" + req.key + "\" must not carry values");
            break;
        }
    }
}

bool selectorMatches(const Selector& sel, const LabelMap& labels) {
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
            if (!present ||
                std::find(req.values.begin(), req.values.end(), it->second) == req.values.end())
                return false;
            break;
        case SelectorOp::NotIn:
            // An absent key satisfies NotIn.
            if (present &&
                std::find(req.values.begin(), req.values.end(), it->second) != req.values.end())
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

} // namespace clustergate::model
