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

#include "clustergate/vault/storage.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "clustergate/errors.hpp"

namespace clustergate::vault {

using nlohmann::json;

namespace {

constexpr char kMagic[8] = {'C', 'G', 'V', 'A', 'U', 'L', 'T', '1'};

void writeU32(std::ostream& out, std::uint32_t value) {
    char buf[4];
    for (int i = 0; i < 4; ++i)
        buf[i] = static_cast<char>((value >> (8 * i)) & 0xff);
    out.write(buf, 4);
}

bool readU32(std::istream& in, std::uint32_t& value) {
    char buf[4];
    if (!in.read(buf, 4))
        return false;
    value = 0;
    for (int i = 3; i >= 0; --i)
        value = (value << 8) | static_cast<std::uint8_t>(buf[i]);
    return true;
}

json headerToJson(const StorageHeader& header) {
    return json{{"v", 1},
                {"shares", header.shares},
                {"threshold", header.threshold},
                {"sentinel",
                 {{"nonce", crypto::toHex(header.sentinelNonce.data(), header.sentinelNonce.size())},
                  {"ct", crypto::toHex(header.sentinelCiphertext)}}}};
}

StorageHeader headerFromJson(const json& doc) {
    StorageHeader header;
    try {
        if (doc.at("v").get<int>() != 1)
            throw VaultError(ErrorCode::Corrupt, "unsupported storage format version");
        header.shares = doc.at("shares").get<int>();
        header.threshold = doc.at("threshold").get<int>();
        const auto nonceBytes = crypto::fromHex(doc.at("sentinel").at("nonce").get<std::string>());
        if (nonceBytes.size() != crypto::kNonceBytes)
            throw VaultError(ErrorCode::Corrupt, "sentinel nonce has wrong length");
        std::copy(nonceBytes.begin(), nonceBytes.end(), header.sentinelNonce.begin());
        header.sentinelCiphertext =
            crypto::fromHex(doc.at("sentinel").at("ct").get<std::string>());
    } catch (const json::exception&) {
        throw VaultError(ErrorCode::Corrupt, "storage header is malformed");
    } catch (const ParseError&) {
        throw VaultError(ErrorCode::Corrupt, "storage header is malformed");
    }
    if (header.threshold < 1 || header.shares < header.threshold || header.shares > 255)
        throw VaultError(ErrorCode::Corrupt, "storage header has invalid share parameters");
    return header;
}

} // namespace

void StorageFile::create(const std::string& path, const StorageHeader& header) {
    if (std::filesystem::exists(path))
        throw VaultError(ErrorCode::AlreadyInitialized,
                         "storage file " + path + " already exists");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot create storage file " + path);
    out.write(kMagic, sizeof(kMagic));
    const std::string headerBytes = headerToJson(header).dump();
    writeU32(out, static_cast<std::uint32_t>(headerBytes.size()));
    out.write(headerBytes.data(), static_cast<std::streamsize>(headerBytes.size()));
    out.flush();
    if (!out)
        throw Error("failed writing storage file " + path);
}

bool StorageFile::exists(const std::string& path) {
    return std::filesystem::exists(path);
}

StorageFile::StorageFile(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_, std::ios::binary);
    if (!in)
        throw VaultError(ErrorCode::NotInitialized, "storage file " + path_ + " does not exist");
    char magic[8];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw VaultError(ErrorCode::Corrupt, "storage file has wrong magic");
    std::uint32_t headerLen = 0;
    if (!readU32(in, headerLen) || headerLen == 0 || headerLen > (1u << 20))
        throw VaultError(ErrorCode::Corrupt, "storage header length is invalid");
    std::string headerBytes(headerLen, '\0');
    if (!in.read(headerBytes.data(), headerLen))
        throw VaultError(ErrorCode::Corrupt, "storage header is truncated");
    json doc;
    try {
        doc = json::parse(headerBytes);
    } catch (const json::exception&) {
        throw VaultError(ErrorCode::Corrupt, "storage header is not valid JSON");
    }
    header_ = headerFromJson(doc);
    dataOffset_ = sizeof(kMagic) + 4 + headerLen;
}

std::vector<StorageRecord> StorageFile::readAll() const {
    std::ifstream in(path_, std::ios::binary);
    if (!in)
        throw VaultError(ErrorCode::Corrupt, "storage file " + path_ + " disappeared");
    in.seekg(static_cast<std::streamoff>(dataOffset_));
    std::vector<StorageRecord> out;
    std::uint64_t lastCounter = 0; // sentinel owns counter 0
    std::uint32_t frameLen = 0;
    while (readU32(in, frameLen)) {
        if (frameLen < crypto::kNonceBytes + crypto::kTagBytes || frameLen > (1u << 26))
            throw VaultError(ErrorCode::Corrupt, "storage record frame length is invalid");
        std::vector<char> frame(frameLen);
        if (!in.read(frame.data(), frameLen))
            throw VaultError(ErrorCode::Corrupt, "storage record is truncated");
        StorageRecord record;
        std::copy(frame.begin(), frame.begin() + crypto::kNonceBytes, record.nonce.begin());
        record.ciphertext.assign(frame.begin() + crypto::kNonceBytes, frame.end());
        const std::uint64_t counter = crypto::counterFromNonce(record.nonce);
        if (counter <= lastCounter)
            throw VaultError(ErrorCode::Corrupt, "storage nonce counters are not increasing");
        lastCounter = counter;
        out.push_back(std::move(record));
    }
    return out;
}

void StorageFile::append(const StorageRecord& record) {
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out)
        throw Error("cannot append to storage file " + path_);
    const std::uint32_t frameLen =
        static_cast<std::uint32_t>(record.nonce.size() + record.ciphertext.size());
    writeU32(out, frameLen);
    out.write(reinterpret_cast<const char*>(record.nonce.data()),
              static_cast<std::streamsize>(record.nonce.size()));
    out.write(reinterpret_cast<const char*>(record.ciphertext.data()),
              static_cast<std::streamsize>(record.ciphertext.size()));
    out.flush();
    if (!out)
        throw Error("failed appending to storage file " + path_);
}

} // namespace clustergate::vault
