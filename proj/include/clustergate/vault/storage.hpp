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
#include <vector>

#include "clustergate/vault/crypto.hpp"

namespace clustergate::vault {

// Single append-only file: an 8-byte magic, one length-prefixed plaintext
// JSON header (share parameters + sealed sentinel), then length-prefixed
// encrypted records of [12-byte nonce || ciphertext+tag]. Record nonces are
// persisted counters and must be strictly increasing; a violation or any
// truncated frame reads back as Corrupt.

struct StorageHeader {
    int shares = 0;
    int threshold = 0;
    crypto::Nonce sentinelNonce{};
    std::vector<std::uint8_t> sentinelCiphertext;
};

struct StorageRecord {
    crypto::Nonce nonce{};
    std::vector<std::uint8_t> ciphertext;
};

class StorageFile {
public:
    // Creates the file with a header; fails if the file already exists.
    static void create(const std::string& path, const StorageHeader& header);

    static bool exists(const std::string& path);

    // Opens an existing file and parses the header eagerly.
    explicit StorageFile(std::string path);

    const StorageHeader& header() const { return header_; }

    // Reads every record, enforcing frame integrity and nonce monotonicity.
    std::vector<StorageRecord> readAll() const;

    // Appends one record and flushes it to disk.
    void append(const StorageRecord& record);

    const std::string& path() const { return path_; }

private:
    std::string path_;
    StorageHeader header_;
    std::size_t dataOffset_ = 0; // first byte after the header
};

} // namespace clustergate::vault
