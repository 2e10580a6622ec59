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

#include <map>
#include <string>

namespace clustergate::vault {

// Substitutes `{{ .Data.<key> }}` placeholders; no other template construct
// exists. Unknown keys and malformed placeholders throw ValidationError with
// the byte offset of the opening braces.
std::string renderTemplate(const std::string& tmpl,
                           const std::map<std::string, std::string>& data);

// Strips "__binary:" markers, base64-decoding the marked values.
std::map<std::string, std::string> decodeSecretData(
    const std::map<std::string, std::string>& data);

} // namespace clustergate::vault
