#pragma once

#include <string>

#include "exc/qfe.hpp"

#include <json.hpp>

namespace exc {

struct Model {
    std::string name;
    std::string description;
    QFunctionalEquation eq;
};

// Built-in models, zero setup:
//  dyck    — Dyck paths counted by half-length and k-th moments of height
//  motzkin — Motzkin trees counted by vertices and k-th depth-power sums
//  binary  — vertex-counted binary trees (periodic counting sequence), same
//            depth-power deformation as motzkin
bool is_builtin_model(const std::string& name);
Model builtin_model(const std::string& name, int M);

// JSON model files: {M, N, P: [{u_exponents, y_exponents, coeff}], shifts,
// name?, description?}; coeff strings parse bit-exactly as "num/den".
Model parse_model_json(const nlohmann::json& j);
nlohmann::json model_to_json(const Model& m);
Model load_model_file(const std::string& path);

}  // namespace exc
