#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "latgen/bounds.hpp"
#include "latgen/cbc.hpp"
#include "latgen/diagnostics.hpp"

namespace latgen {

// All documents are built as ordered_json and serialized with dump_json so
// that identical inputs give byte-identical files.
nlohmann::ordered_json result_to_json(const ConstructionResult& r);
nlohmann::ordered_json bound_report_to_json(const BoundReport& rep, const BoundInputs& in);

// Deterministic writer: 2-space indent, sorted nothing (insertion order kept),
// floating-point numbers always printed with 17 significant digits, trailing
// newline.
std::string dump_json(const nlohmann::ordered_json& doc);

// Structural validation mirroring the shipped schema files; returns one
// message per violation, empty when the document conforms.
std::vector<std::string> validate_result_json(const nlohmann::json& doc);
std::vector<std::string> validate_bound_json(const nlohmann::json& doc);

// Parses a construct document back; throws std::invalid_argument with the
// first structural violation if the document does not conform.
ConstructionResult result_from_json(const nlohmann::json& doc);

std::string result_to_csv(const ConstructionResult& r);
std::string bound_report_to_csv(const BoundReport& rep, std::uint32_t d);

}  // namespace latgen
