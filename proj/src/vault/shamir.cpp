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

#include "clustergate/vault/shamir.hpp"

#include "clustergate/errors.hpp"
#include "clustergate/vault/crypto.hpp"

namespace clustergate::vault {

namespace gf256 {

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t product = 0;
    while (b) {
        if (b & 1)
            product ^= a;
        const bool carry = a & 0x80;
        a <<= 1;
        if (carry)
            a ^= 0x1b; // x^8 == x^4+x^3+x+1 mod the reducing polynomial
        b >>= 1;
    }
    return product;
}

std::uint8_t inverse(std::uint8_t a) {
    if (a == 0)
        throw ValidationError("no inverse of 0 in GF(2^8)");
    // a^254 == a^-1 since the multiplicative group has order 255.
    std::uint8_t result = 1;
    std::uint8_t base = a;
    int exp = 254;
    while (exp) {
        if (exp & 1)
            result = mul(result, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

} // namespace gf256

std::vector<std::vector<std::uint8_t>> splitSecret(const std::vector<std::uint8_t>& secret,
                                                   int shares, int threshold) {
    if (secret.empty())
        throw ValidationError("cannot split an empty secret");
    if (threshold < 1 || shares < threshold || shares > 255)
        throw ValidationError("share parameters must satisfy 1 <= threshold <= shares <= 255");

    std::vector<std::vector<std::uint8_t>> out(shares);
    for (int i = 0; i < shares; ++i) {
        out[i].reserve(secret.size() + 1);
        out[i].push_back(static_cast<std::uint8_t>(i + 1));
    }
    for (std::uint8_t byte : secret) {
        // f(x) = byte + c1·x + ... + c_{t-1}·x^{t-1}, coefficients uniform.
        std::vector<std::uint8_t> coeffs = crypto::randomBytes(threshold - 1);
        for (int i = 0; i < shares; ++i) {
            const std::uint8_t x = static_cast<std::uint8_t>(i + 1);
            std::uint8_t y = 0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
                y = gf256::mul(y, x) ^ *it; // Horner, highest degree first
            y = gf256::mul(y, x) ^ byte;
            out[i].push_back(y);
        }
    }
    return out;
}

std::vector<std::uint8_t> combineShares(const std::vector<std::vector<std::uint8_t>>& shares) {
    if (shares.empty())
        throw ValidationError("no shares given");
    const std::size_t len = shares[0].size();
    if (len < 2)
        throw ValidationError("share too short");
    for (const auto& s : shares) {
        if (s.size() != len)
            throw ValidationError("shares have mixed lengths");
        if (s[0] == 0)
            throw ValidationError("share has zero x coordinate");
    }
    for (std::size_t i = 0; i < shares.size(); ++i)
        for (std::size_t j = i + 1; j < shares.size(); ++j)
            if (shares[i][0] == shares[j][0])
                throw ValidationError("duplicate share x coordinate");

    std::vector<std::uint8_t> secret(len - 1, 0);
    for (std::size_t byteIdx = 0; byteIdx < len - 1; ++byteIdx) {
        std::uint8_t value = 0;
        for (std::size_t i = 0; i < shares.size(); ++i) {
            const std::uint8_t xi = shares[i][0];
            // Lagrange basis at x=0: prod over j != i of xj / (xj ^ xi).
            std::uint8_t basis = 1;
            for (std::size_t j = 0; j < shares.size(); ++j) {
                if (j == i)
                    continue;
                const std::uint8_t xj = shares[j][0];
                basis = gf256::mul(basis, gf256::mul(xj, gf256::inverse(xj ^ xi)));
            }
            value ^= gf256::mul(shares[i][byteIdx + 1], basis);
        }
        secret[byteIdx] = value;
    }
    return secret;
}

} // namespace clustergate::vault
