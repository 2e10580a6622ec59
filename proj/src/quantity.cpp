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

#include "clustergate/quantity.hpp"

#include <cctype>
#include <charconv>

#include "clustergate/errors.hpp"

namespace clustergate::model {

namespace {

struct Suffix {
    const char* text;
    std::int64_t multiplier;
};

constexpr Suffix kCpuSuffixes[] = {
    {"m", 1},
    {"", 1000}, // whole cores
};

constexpr Suffix kMemorySuffixes[] = {
    {"Ki", 1024},
    {"Mi", 1024LL * 1024},
    {"Gi", 1024LL * 1024 * 1024},
    {"K", 1000},
    {"M", 1000LL * 1000},
    {"G", 1000LL * 1000 * 1000},
    {"", 1},
};

} // namespace

const char* toString(ResourceKind kind) {
    return kind == ResourceKind::Cpu ? "cpu" : "memory";
}

Quantity parseQuantity(std::string_view text, ResourceKind kind) {
    if (text.empty())
        throw ParseError("empty quantity");
    if (text.front() == '-')
        throw ParseError("quantity \"" + std::string(text) + "\" must not be negative");

    std::size_t digits = 0;
    while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits])))
        ++digits;
    if (digits == 0)
        throw ParseError("quantity \"" + std::string(text) + "\" does not start with an integer");

    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + digits, value);
    if (ec != std::errc() || ptr != text.data() + digits)
        throw ParseError("quantity \"" + std::string(text) + "\" overflows");

    const std::string_view suffix = text.substr(digits);
    std::int64_t multiplier = -1;
    if (kind == ResourceKind::Cpu) {
        for (const auto& s : kCpuSuffixes)
            if (suffix == s.text) { multiplier = s.multiplier; break; }
    } else {
        for (const auto& s : kMemorySuffixes)
            if (suffix == s.text) { multiplier = s.multiplier; break; }
    }
    if (multiplier < 0)
        throw ParseError("unknown " + std::string(toString(kind)) + " suffix \"" +
                         std::string(suffix) + "\" in quantity \"" + std::string(text) + "\"");

    std::int64_t result = 0;
    if (__builtin_mul_overflow(value, multiplier, &result))
        throw ParseError("quantity \"" + std::string(text) + "\" overflows");
    return Quantity{kind, result};
}

std::string formatQuantity(const Quantity& q) {
    if (q.kind == ResourceKind::Cpu) {
        if (q.value % 1000 == 0)
            return std::to_string(q.value / 1000);
        return std::to_string(q.value) + "m";
    }
    if (q.value == 0)
        return "0";
    // Largest suffix that divides the value exactly; bytes otherwise.
    std::int64_t best = 1;
    const char* bestText = "";
    for (const auto& s : kMemorySuffixes) {
        if (s.multiplier > best && q.value % s.multiplier == 0) {
            best = s.multiplier;
            bestText = s.text;
        }
    }
    return std::to_string(q.value / best) + bestText;
}

} // namespace clustergate::model
