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

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "clustergate/model.hpp"

// Manifest ingestion. JSON is the canonical form; YAML is converted to JSON
// first and fed through the same path. Unknown fields are silently ignored;
// missing required fields are errors.

namespace clustergate::manifest {

enum class Format { Json, Yaml };

using ParsedManifest = std::variant<model::Pod, model::WorkloadObject, model::NetworkPolicy>;

// Parses a single document with a recognized `kind`. Throws ParseError with
// position information for syntax errors, unknown kinds, or missing
// metadata.name.
ParsedManifest parseManifest(std::string_view text, Format format);

// `---`-separated YAML streams or a single JSON document.
std::vector<ParsedManifest> parseManifestStream(std::string_view text, Format format);

// Format guessed from the file extension (.json vs anything else).
std::vector<ParsedManifest> loadManifestFile(const std::string& path);

// Lower-level converters between the model and its canonical JSON form.
nlohmann::json toJson(const model::Pod& pod);
nlohmann::json toJson(const model::WorkloadObject& object);
nlohmann::json toJson(const model::NetworkPolicy& policy);
nlohmann::json toJson(const model::Selector& sel);
nlohmann::json toJson(const model::Container& container);
nlohmann::json toJson(const manifest::ParsedManifest& object);

model::Pod podFromJson(const nlohmann::json& doc);
model::WorkloadObject workloadFromJson(const nlohmann::json& doc);
model::NetworkPolicy networkPolicyFromJson(const nlohmann::json& doc);
model::Selector selectorFromJson(const nlohmann::json& doc);
ParsedManifest manifestFromJson(const nlohmann::json& doc);

// YAML text -> JSON value (strings stay strings when quoted; plain scalars
// resolve to bool/int/double per the YAML core schema).
nlohmann::json yamlToJson(std::string_view text);
std::vector<nlohmann::json> yamlStreamToJson(std::string_view text);

// ClusterState fixture: one JSON document with top-level keys `namespaces`,
// `pods`, `objects`, `networkPolicies`. Every namespace is labeled with
// kubernetes.io/metadata.name so name-based selection is expressible.
model::ClusterState clusterStateFromJson(const nlohmann::json& doc);
model::ClusterState loadClusterState(const std::string& path);
nlohmann::json toJson(const model::ClusterState& state);

} // namespace clustergate::manifest
