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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace clustergate::vault::crypto {

inline constexpr std::size_t kKeyBytes = 32;
inline constexpr std::size_t kNonceBytes = 12;
inline constexpr std::size_t kTagBytes = 16;

using Key = std::array<std::uint8_t, kKeyBytes>;
using Nonce = std::array<std::uint8_t, kNonceBytes>;

std::vector<std::uint8_t> randomBytes(std::size_t n);

std::string toHex(const std::uint8_t* data, std::size_t n);
std::string toHex(const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> fromHex(const std::string& hex); // throws ParseError

std::string base64Encode(const std::uint8_t* data, std::size_t n);
std::string base64Encode(const std::string& data);
std::string base64Decode(const std::string& text); // throws ParseError

bool isValidUtf8(const std::string& text);

// Big-endian counter in the low 8 bytes; high 4 bytes zero.
Nonce nonceFromCounter(std::uint64_t counter);
std::uint64_t counterFromNonce(const Nonce& nonce);

// AES-256-GCM. Seal returns ciphertext || 16-byte tag; open returns nullopt
// on authentication failure (wrong key, tampered data, or wrong aad).
std::vector<std::uint8_t> aeadSeal(const Key& key, const Nonce& nonce,
                                   const std::vector<std::uint8_t>& plaintext,
                                   const std::string& aad);
std::optional<std::vector<std::uint8_t>> aeadOpen(const Key& key, const Nonce& nonce,
                                                  const std::vector<std::uint8_t>& sealed,
                                                  const std::string& aad);

std::array<std::uint8_t, 32> sha256(const std::string& data);
std::string sha256Hex(const std::string& data);

} // namespace clustergate::vault::crypto
