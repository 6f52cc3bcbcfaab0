#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "logdec/contents.hpp"
#include "logdec/refinement.hpp"

namespace logdec {

/// On-disk description of a system ("ld-system/1"):
/// {
///   "schema": "ld-system/1",
///   "outcomes": [{"label": "1", "p": 0.1}, ...],
///   "variables": {"X": [["1","3"],["2","4"]], ...},
///   "refinements": {"1": [{"label":"1a","p":0.05}, ...], ...}   // optional
/// }
struct SystemDocument {
    static constexpr const char* kSchema = "ld-system/1";

    std::vector<std::pair<std::string, double>> outcomes;
    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> variables;
    std::vector<std::pair<std::string, std::vector<ChildSpec>>> refinements;
};

/// Validates field presence and types; throws ValidationError with the
/// offending field in the message.
SystemDocument system_document_from_json(const nlohmann::json& j);

/// Reads and parses a file; JSON syntax errors surface as
/// nlohmann::json::parse_error with byte positions.
SystemDocument load_system_document(const std::string& path);

nlohmann::json system_document_to_json(const SystemDocument& doc);

struct LoadedSystem {
    InfoSystem system;
    std::optional<RefinementMap> refinement;
    double weight_sum = 0.0;
};

/// Builds the semantic objects through the core validators; `normalize`
/// rescales weights to sum to one first.
LoadedSystem build_system(const SystemDocument& doc, bool normalize = false);

}  // namespace logdec
