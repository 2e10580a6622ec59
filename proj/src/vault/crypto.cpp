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

#include "clustergate/vault/crypto.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <memory>
#include <stdexcept>

#include "clustergate/errors.hpp"

namespace clustergate::vault::crypto {

std::vector<std::uint8_t> randomBytes(std::size_t n) {
    std::vector<std::uint8_t> out(n);
    if (n > 0 && RAND_bytes(out.data(), static_cast<int>(n)) != 1)
        throw Error("system random generator failure");
    return out;
}

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hexValue(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}
} // namespace

std::string toHex(const std::uint8_t* data, std::size_t n) {
    std::string out;
    out.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(kHexDigits[data[i] >> 4]);
        out.push_back(kHexDigits[data[i] & 0xf]);
    }
    return out;
}

std::string toHex(const std::vector<std::uint8_t>& data) {
    return toHex(data.data(), data.size());
}

std::vector<std::uint8_t> fromHex(const std::string& hex) {
    if (hex.size() % 2 != 0)
        throw ParseError("hex string has odd length");
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hexValue(hex[2 * i]);
        const int lo = hexValue(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw ParseError("invalid hex digit in input");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

namespace {
constexpr char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64Value(char c) {
    if (c >= 'A' && c <= 'Z')
        return c - 'A';
    if (c >= 'a' && c <= 'z')
        return c - 'a' + 26;
    if (c >= '0' && c <= '9')
        return c - '0' + 52;
    if (c == '+')
        return 62;
    if (c == '/')
        return 63;
    return -1;
}
} // namespace

std::string base64Encode(const std::uint8_t* data, std::size_t n) {
    std::string out;
    out.reserve(((n + 2) / 3) * 4);
    for (std::size_t i = 0; i < n; i += 3) {
        const std::uint32_t b0 = data[i];
        const std::uint32_t b1 = i + 1 < n ? data[i + 1] : 0;
        const std::uint32_t b2 = i + 2 < n ? data[i + 2] : 0;
        const std::uint32_t triple = (b0 << 16) | (b1 << 8) | b2;
        out.push_back(kB64[(triple >> 18) & 0x3f]);
        out.push_back(kB64[(triple >> 12) & 0x3f]);
        out.push_back(i + 1 < n ? kB64[(triple >> 6) & 0x3f] : '=');
        out.push_back(i + 2 < n ? kB64[triple & 0x3f] : '=');
    }
    return out;
}

std::string base64Encode(const std::string& data) {
    return base64Encode(reinterpret_cast<const std::uint8_t*>(data.data()), data.size());
}

std::string base64Decode(const std::string& text) {
    if (text.size() % 4 != 0)
        throw ParseError("base64 input length must be a multiple of 4");
    std::string out;
    out.reserve((text.size() / 4) * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int vals[4];
        int pad = 0;
        for (int j = 0; j < 4; ++j) {
            const char c = text[i + j];
            if (c == '=') {
                if (i + 4 != text.size() || j < 2)
                    throw ParseError("misplaced base64 padding");
                vals[j] = 0;
                ++pad;
            } else {
                if (pad)
                    throw ParseError("base64 data after padding");
                vals[j] = b64Value(c);
                if (vals[j] < 0)
                    throw ParseError("invalid base64 character");
            }
        }
        const std::uint32_t triple = (static_cast<std::uint32_t>(vals[0]) << 18) |
                                     (static_cast<std::uint32_t>(vals[1]) << 12) |
                                     (static_cast<std::uint32_t>(vals[2]) << 6) |
                                     static_cast<std::uint32_t>(vals[3]);
        out.push_back(static_cast<char>((triple >> 16) & 0xff));
        if (pad < 2)
            out.push_back(static_cast<char>((triple >> 8) & 0xff));
        if (pad < 1)
            out.push_back(static_cast<char>(triple & 0xff));
    }
    return out;
}

bool isValidUtf8(const std::string& text) {
    const auto* p = reinterpret_cast<const unsigned char*>(text.data());
    const auto* end = p + text.size();
    while (p < end) {
        if (*p < 0x80) {
            ++p;
            continue;
        }
        int len;
        std::uint32_t cp;
        if ((*p & 0xe0) == 0xc0) {
            len = 2;
            cp = *p & 0x1f;
        } else if ((*p & 0xf0) == 0xe0) {
            len = 3;
            cp = *p & 0x0f;
        } else if ((*p & 0xf8) == 0xf0) {
            len = 4;
            cp = *p & 0x07;
        } else {
            return false;
        }
        if (end - p < len)
            return false;
        for (int i = 1; i < len; ++i) {
            if ((p[i] & 0xc0) != 0x80)
                return false;
            cp = (cp << 6) | (p[i] & 0x3f);
        }
        // Reject overlong encodings, surrogates, and out-of-range points.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000))
            return false;
        if (cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff))
            return false;
        p += len;
    }
    return true;
}

Nonce nonceFromCounter(std::uint64_t counter) {
    Nonce nonce{};
    for (int i = 0; i < 8; ++i)
        nonce[11 - i] = static_cast<std::uint8_t>(counter >> (8 * i));
    return nonce;
}

std::uint64_t counterFromNonce(const Nonce& nonce) {
    std::uint64_t counter = 0;
    for (int i = 4; i < 12; ++i)
        counter = (counter << 8) | nonce[i];
    return counter;
}

namespace {
struct CtxDeleter {
    void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;
} // namespace

std::vector<std::uint8_t> aeadSeal(const Key& key, const Nonce& nonce,
                                   const std::vector<std::uint8_t>& plaintext,
                                   const std::string& aad) {
    CtxPtr ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                                   nonce.data()) != 1)
        throw Error("cipher initialization failed");
    int len = 0;
    if (!aad.empty() &&
        EVP_EncryptUpdate(ctx.get(), nullptr, &len,
                          reinterpret_cast<const std::uint8_t*>(aad.data()),
                          static_cast<int>(aad.size())) != 1)
        throw Error("cipher aad update failed");
    std::vector<std::uint8_t> out(plaintext.size() + kTagBytes);
    if (!plaintext.empty() &&
        EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1)
        throw Error("cipher update failed");
    int fin = 0;
    std::uint8_t tail[kTagBytes];
    if (EVP_EncryptFinal_ex(ctx.get(), tail, &fin) != 1 || fin != 0)
        throw Error("cipher finalization failed");
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagBytes,
                            out.data() + plaintext.size()) != 1)
        throw Error("cipher tag extraction failed");
    return out;
}

std::optional<std::vector<std::uint8_t>> aeadOpen(const Key& key, const Nonce& nonce,
                                                  const std::vector<std::uint8_t>& sealed,
                                                  const std::string& aad) {
    if (sealed.size() < kTagBytes)
        return std::nullopt;
    const std::size_t ctLen = sealed.size() - kTagBytes;
    CtxPtr ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                                   nonce.data()) != 1)
        throw Error("cipher initialization failed");
    int len = 0;
    if (!aad.empty() &&
        EVP_DecryptUpdate(ctx.get(), nullptr, &len,
                          reinterpret_cast<const std::uint8_t*>(aad.data()),
                          static_cast<int>(aad.size())) != 1)
        throw Error("cipher aad update failed");
    std::vector<std::uint8_t> out(ctLen);
    if (ctLen > 0 &&
        EVP_DecryptUpdate(ctx.get(), out.data(), &len, sealed.data(),
                          static_cast<int>(ctLen)) != 1)
        return std::nullopt;
    std::vector<std::uint8_t> tag(sealed.begin() + ctLen, sealed.end());
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagBytes, tag.data()) != 1)
        throw Error("cipher tag set failed");
    int fin = 0;
    std::uint8_t tail[kTagBytes];
    if (EVP_DecryptFinal_ex(ctx.get(), tail, &fin) != 1)
        return std::nullopt; // authentication failure
    return out;
}

std::array<std::uint8_t, 32> sha256(const std::string& data) {
    std::array<std::uint8_t, 32> digest{};
    SHA256(reinterpret_cast<const std::uint8_t*>(data.data()), data.size(), digest.data());
    return digest;
}

std::string sha256Hex(const std::string& data) {
    const auto digest = sha256(data);
    return toHex(digest.data(), digest.size());
}

} // namespace clustergate::vault::crypto
