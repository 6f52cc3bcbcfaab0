#include "logdec/json_io.hpp"

#include <fstream>

namespace logdec {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* field, json::value_t type,
                          const char* type_name) {
    auto it = j.find(field);
    if (it == j.end()) {
        throw ValidationError(std::string("system document: missing field \"") + field +
                              "\"");
    }
    if (it->type() != type &&
        !(type == json::value_t::number_float && it->is_number())) {
        throw ValidationError(std::string("system document: field \"") + field +
                              "\" must be " + type_name);
    }
    return *it;
}

double require_number(const json& j, const std::string& where) {
    if (!j.is_number()) {
        throw ValidationError("system document: " + where + " must be a number");
    }
    return j.get<double>();
}

std::string require_string(const json& j, const std::string& where) {
    if (!j.is_string()) {
        throw ValidationError("system document: " + where + " must be a string");
    }
    return j.get<std::string>();
}

}  // namespace

SystemDocument system_document_from_json(const json& j) {
    if (!j.is_object()) {
        throw ValidationError("system document: top level must be an object");
    }
    const std::string schema =
        require_string(require_field(j, "schema", json::value_t::string, "a string"),
                       "\"schema\"");
    if (schema != SystemDocument::kSchema) {
        throw ValidationError("system document: unsupported schema \"" + schema +
                              "\" (expected " + SystemDocument::kSchema + ")");
    }

    SystemDocument doc;
    const json& outcomes =
        require_field(j, "outcomes", json::value_t::array, "an array");
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const json& o = outcomes[i];
        const std::string where = "outcomes[" + std::to_string(i) + "]";
        if (!o.is_object()) throw ValidationError("system document: " + where + " must be an object");
        doc.outcomes.emplace_back(
            require_string(require_field(o, "label", json::value_t::string, "a string"),
                           where + ".label"),
            require_number(require_field(o, "p", json::value_t::number_float, "a number"),
                           where + ".p"));
    }

    const json& variables =
        require_field(j, "variables", json::value_t::object, "an object");
    for (const auto& [name, blocks] : variables.items()) {
        if (!blocks.is_array()) {
            throw ValidationError("system document: variables." + name +
                                  " must be an array of label arrays");
        }
        std::vector<std::vector<std::string>> parsed;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const json& block = blocks[b];
            if (!block.is_array()) {
                throw ValidationError("system document: variables." + name + "[" +
                                      std::to_string(b) + "] must be an array");
            }
            std::vector<std::string> labels;
            for (const json& l : block) {
                labels.push_back(require_string(l, "variables." + name + " block entry"));
            }
            parsed.push_back(std::move(labels));
        }
        doc.variables.emplace_back(name, std::move(parsed));
    }

    if (auto it = j.find("refinements"); it != j.end()) {
        if (!it->is_object()) {
            throw ValidationError("system document: \"refinements\" must be an object");
        }
        for (const auto& [parent, kids] : it->items()) {
            if (!kids.is_array()) {
                throw ValidationError("system document: refinements." + parent +
                                      " must be an array");
            }
            std::vector<ChildSpec> specs;
            for (const json& k : kids) {
                const std::string where = "refinements." + parent + " entry";
                if (!k.is_object()) throw ValidationError("system document: " + where + " must be an object");
                specs.push_back(ChildSpec{
                    require_string(require_field(k, "label", json::value_t::string, "a string"),
                                   where + ".label"),
                    require_number(require_field(k, "p", json::value_t::number_float, "a number"),
                                   where + ".p")});
            }
            doc.refinements.emplace_back(parent, std::move(specs));
        }
    }
    return doc;
}

SystemDocument load_system_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open \"" + path + "\"");
    }
    json j = json::parse(in);  // parse_error carries the byte position
    return system_document_from_json(j);
}

nlohmann::json system_document_to_json(const SystemDocument& doc) {
    json j;
    j["schema"] = SystemDocument::kSchema;
    j["outcomes"] = json::array();
    for (const auto& [label, p] : doc.outcomes) {
        j["outcomes"].push_back({{"label", label}, {"p", p}});
    }
    j["variables"] = json::object();
    for (const auto& [name, blocks] : doc.variables) {
        j["variables"][name] = blocks;
    }
    if (!doc.refinements.empty()) {
        j["refinements"] = json::object();
        for (const auto& [parent, kids] : doc.refinements) {
            json arr = json::array();
            for (const ChildSpec& k : kids) {
                arr.push_back({{"label", k.label}, {"p", k.weight}});
            }
            j["refinements"][parent] = std::move(arr);
        }
    }
    return j;
}

LoadedSystem build_system(const SystemDocument& doc, bool normalize) {
    std::vector<std::string> labels;
    std::vector<double> probs;
    labels.reserve(doc.outcomes.size());
    for (const auto& [label, p] : doc.outcomes) {
        labels.push_back(label);
        probs.push_back(p);
    }
    OutcomeSpace space(std::move(labels), std::move(probs));
    const double weight_sum = space.total_weight();
    if (normalize) space = space.normalized();

    std::vector<std::pair<std::string, Partition>> vars;
    vars.reserve(doc.variables.size());
    for (const auto& [name, blocks] : doc.variables) {
        vars.emplace_back(name, partition_from_blocks(space, blocks));
    }
    InfoSystem system(space, std::move(vars));

    std::optional<RefinementMap> refinement;
    if (!doc.refinements.empty()) {
        refinement = refine_space(system.space(), doc.refinements);
    }
    return LoadedSystem{std::move(system), std::move(refinement), weight_sum};
}

}  // namespace logdec
