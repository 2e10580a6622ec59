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
#include <vector>

namespace clustergate::vault {

// Polynomial secret sharing over GF(2^8), reducing polynomial x^8+x^4+x^3+x+1
// (0x11b), applied independently to each secret byte. A share is laid out as
// [x coordinate byte || one evaluation byte per secret byte]; x coordinates
// are 1..shares, never 0.
//
// Any `threshold` distinct shares reconstruct the secret exactly; fewer
// reveal nothing (coefficients are uniform random).

std::vector<std::vector<std::uint8_t>> splitSecret(const std::vector<std::uint8_t>& secret,
                                                   int shares, int threshold);

// Interpolates at x=0. Throws ValidationError on mixed lengths, duplicate or
// zero x coordinates, or empty input.
std::vector<std::uint8_t> combineShares(const std::vector<std::vector<std::uint8_t>>& shares);

namespace gf256 {
std::uint8_t mul(std::uint8_t a, std::uint8_t b);
std::uint8_t inverse(std::uint8_t a); // a != 0
} // namespace gf256

} // namespace clustergate::vault
