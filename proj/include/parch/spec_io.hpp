#pragma once

// Bundle description documents (JSON or TOML) and JSON serialization of classes.
//
//   {
//     "divisors": 2,
//     "truncation_degree": 4,            (optional, default divisors + 3)
//     "extra_classes": ["H"],
//     "relations": ["D1*D2"],
//     "ladders": [["-1/2"], ["-1/3", "0"]],
//     "summands": [{"c1": {"H": "1/1"}, "jumps": [0, 1]}]
//   }

#include "parch/parabolic.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace parch {

enum class ValidationCode {
    malformed_document,
    schema,
    malformed_rational,
    weight_out_of_range,
    decreasing_weights,
    bad_riser_index,
    unknown_generator,
};

std::string_view to_string(ValidationCode code);

class ValidationError : public std::invalid_argument {
public:
    ValidationError(ValidationCode code, std::string path, const std::string& message);

    [[nodiscard]] ValidationCode code() const { return code_; }
    /// JSON-pointer-like location, e.g. "ladders[0][1]".
    [[nodiscard]] const std::string& path() const { return path_; }

private:
    ValidationCode code_;
    std::string path_;
};

enum class SpecFormat { json, toml };

ParabolicBundle parse_spec(const nlohmann::json& document);
ParabolicBundle parse_spec_text(std::string_view text, SpecFormat format);
/// Format chosen by extension: ".toml" is TOML, anything else JSON.
ParabolicBundle load_spec(const std::filesystem::path& path);

/// Inverse of parse_spec.
nlohmann::ordered_json spec_to_json(const ParabolicBundle& bundle);

/// {"1": "1/1", "D1": "1/2", ...} in canonical monomial order.
nlohmann::ordered_json class_to_json(const GradedClass& x);
GradedClass class_from_json(const ModelPtr& model, const nlohmann::json& terms);

}  // namespace parch
