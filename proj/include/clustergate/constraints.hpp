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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clustergate/manifest.hpp"
#include "clustergate/model.hpp"

namespace clustergate::constraints {

enum class ParamType { StringList, Quantity, Number, RangeList, String };

struct ParamSpec {
    ParamType type;
    bool required = false;
};

// Flattened view of any admitted object: checks never walk raw documents.
// Pointers alias the viewed object and are valid for the duration of a call.
struct ObjectView {
    std::string kind;
    std::string ns;
    std::string name;
    const model::LabelMap* labels = nullptr;
    const model::Pod* pod = nullptr; // the pod itself, or a workload's template
    std::optional<std::int64_t> replicas;
    const std::vector<model::BindingSubject>* subjects = nullptr;
};

ObjectView viewOf(const model::Pod& pod);
ObjectView viewOf(const model::WorkloadObject& object);
ObjectView viewOf(const model::NetworkPolicy& policy);
ObjectView viewOf(const manifest::ParsedManifest& object);

struct Constraint;

// A check reports one message per offending container/field, in a
// deterministic order; empty means compliant.
using CheckFn =
    std::function<std::vector<std::string>(const Constraint&, const ObjectView&)>;

struct ConstraintTemplate {
    std::string name;
    std::string checkId;
    std::map<std::string, ParamSpec> parameterSchema;
    CheckFn check;
};

class TemplateRegistry {
public:
    // The builtin library: k8sallowedrepos, k8scontainerlimits,
    // k8scontainerrequests, k8scontainerratios, k8srequiredresources,
    // k8sdisallowanonymous, k8sreplicalimits, k8srequiredprobes,
    // k8spspcapabilities, k8spsphostnamespaces.
    static const TemplateRegistry& builtin();

    void add(ConstraintTemplate tmpl);
    const ConstraintTemplate* find(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, ConstraintTemplate> templates_;
};

enum class EnforcementAction { Deny, Warn, Dryrun };

std::string toString(EnforcementAction action);
EnforcementAction enforcementActionFromString(const std::string& text);

struct MatchCriteria {
    std::vector<std::string> kinds;              // empty: all kinds
    std::vector<std::string> namespaces;         // empty: all namespaces
    std::vector<std::string> excludedNamespaces; // wins over namespaces
    model::Selector labelSelector;
};

struct Constraint {
    std::string name;
    std::string templateName;
    EnforcementAction enforcementAction = EnforcementAction::Deny;
    MatchCriteria match;
    nlohmann::json parameters; // validated against the template schema at load
    const ConstraintTemplate* tmpl = nullptr;
};

struct ObjectRef {
    std::string kind;
    std::string ns;
    std::string name;

    bool operator==(const ObjectRef&) const = default;
    auto operator<=>(const ObjectRef&) const = default;
};

struct Violation {
    std::string constraintName;
    ObjectRef objectRef;
    std::string message;
    EnforcementAction enforcementAction = EnforcementAction::Deny;

    bool operator==(const Violation&) const = default;
};

nlohmann::json toJson(const Violation& violation);

enum class ReviewOperation { Create, Update, Delete };

std::string toString(ReviewOperation op);
ReviewOperation reviewOperationFromString(const std::string& text);

struct ReviewRequest {
    ReviewOperation operation = ReviewOperation::Create;
    std::optional<manifest::ParsedManifest> object;
    std::optional<manifest::ParsedManifest> oldObject; // update/delete only
};

struct Decision {
    bool allowed = true;
    std::vector<Violation> violations;
};

struct AuditReport {
    std::map<std::string, std::vector<Violation>> perConstraint;
    std::size_t total = 0;
};

nlohmann::json toJson(const AuditReport& report);

// Loading. Files carry fields `template`, `name`, `enforcementAction`,
// `match`, `parameters`; schema violations are load-time errors so checks
// never see malformed parameters. Directory loads sort by constraint name.
Constraint constraintFromJson(const nlohmann::json& doc, const TemplateRegistry& registry);
std::vector<Constraint> loadConstraintsDir(const std::string& dir,
                                           const TemplateRegistry& registry);

bool constraintMatches(const Constraint& constraint, const ObjectView& object);

std::vector<Violation> check(const Constraint& constraint, const ObjectView& object);

// Deny violations block create/update; warn/dryrun never block; delete is
// always allowed with violations still reported.
Decision review(const ReviewRequest& request, const std::vector<Constraint>& constraints);

// Evaluates every constraint against every pod and workload object; lists
// ordered by object namespace then name under each constraint name.
AuditReport audit(const model::ClusterState& state, const std::vector<Constraint>& constraints);

} // namespace clustergate::constraints
