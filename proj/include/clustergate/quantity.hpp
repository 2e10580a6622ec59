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
#include <string_view>

namespace clustergate::model {

enum class ResourceKind { Cpu, Memory };

const char* toString(ResourceKind kind);

// Exact integer in base units: millicores for cpu, bytes for memory.
// Comparisons between limits never touch floating point.
struct Quantity {
    ResourceKind kind = ResourceKind::Cpu;
    std::int64_t value = 0; // >= 0

    bool operator==(const Quantity&) const = default;
    auto operator<=>(const Quantity&) const = default;
};

// Accepts `<integer><suffix>`: cpu suffixes "" (cores) and "m" (millicores),
// memory suffixes "", K, M, G (powers of 1000) and Ki, Mi, Gi (powers of
// 1024). Throws ParseError naming the offending token.
Quantity parseQuantity(std::string_view text, ResourceKind kind);

// Canonical text form. parseQuantity(formatQuantity(q), q.kind) == q.
std::string formatQuantity(const Quantity& q);

} // namespace clustergate::model
