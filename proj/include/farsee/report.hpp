#pragma once

#include "farsee/evaluate.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace farsee {

// Structured evaluation report. The document layout is described by
// schemas/report.schema.json; serialization is deterministic (sorted keys,
// shortest round-trip numbers), so equal reports serialize byte-identically.
nlohmann::json report_to_json(const EvaluationReport& report);

std::string report_to_string(const EvaluationReport& report);

// Structural check of a report document: returns one message per problem,
// empty when the document matches the shipped schema's shape.
std::vector<std::string> validate_report_json(const nlohmann::json& doc);

// Plot-ready CSV extracts.
std::string folds_csv(const EvaluationReport& report);
std::string boxplots_csv(const nlohmann::json& report_doc);

nlohmann::json rule_to_json(const AssociationRule& rule);

} // namespace farsee
