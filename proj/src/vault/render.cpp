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

#include "clustergate/vault/render.hpp"

#include "clustergate/errors.hpp"
#include "clustergate/vault/crypto.hpp"

namespace clustergate::vault {

namespace {
constexpr const char* kPrefix = ".Data.";
constexpr const char* kBinaryMarker = "__binary:";
} // namespace

std::string renderTemplate(const std::string& tmpl,
                           const std::map<std::string, std::string>& data) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        const std::size_t open = tmpl.find("{{", pos);
        if (open == std::string::npos) {
            out.append(tmpl, pos, std::string::npos);
            break;
        }
        out.append(tmpl, pos, open - pos);
        const std::size_t close = tmpl.find("}}", open + 2);
        if (close == std::string::npos)
            throw ValidationError("template error at byte " + std::to_string(open) +
                                  ": unterminated placeholder");
        std::string inner = tmpl.substr(open + 2, close - open - 2);
        // trim surrounding spaces, nothing else
        std::size_t begin = inner.find_first_not_of(' ');
        std::size_t end = inner.find_last_not_of(' ');
        inner = begin == std::string::npos ? "" : inner.substr(begin, end - begin + 1);
        if (inner.rfind(kPrefix, 0) != 0)
            throw ValidationError("template error at byte " + std::to_string(open) +
                                  ": placeholder must have the form {{ .Data.<key> }}");
        const std::string key = inner.substr(std::string(kPrefix).size());
        if (key.empty() || key.find(' ') != std::string::npos)
            throw ValidationError("template error at byte " + std::to_string(open) +
                                  ": invalid key \"" + key + "\"");
        auto it = data.find(key);
        if (it == data.end())
            throw ValidationError("template references unknown key \"" + key + "\"");
        out += it->second;
        pos = close + 2;
    }
    return out;
}

std::map<std::string, std::string> decodeSecretData(
    const std::map<std::string, std::string>& data) {
    std::map<std::string, std::string> out;
    const std::string marker = kBinaryMarker;
    for (const auto& [key, value] : data) {
        if (key.rfind(marker, 0) == 0)
            out[key.substr(marker.size())] = crypto::base64Decode(value);
        else
            out[key] = value;
    }
    return out;
}

} // namespace clustergate::vault
