#pragma once

#include "tumorbif/flat_dynamics.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tumorbif {

/// Full-precision decimal form, 17 significant digits.
std::string format_double(double v);

nlohmann::json nutrient_to_json(const PeriodicNutrient& nut);
/// Throws ConfigError on a malformed object, PositivityViolation on a non-positive nutrient.
PeriodicNutrient nutrient_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const ModelParams& p);
ModelParams params_from_json(const nlohmann::json& j);

struct RunConfig {
    ModelParams params;
    double tol = 1e-12;
    std::uint64_t seed = 0;
    int grid = 512;
    std::vector<double> j_list; ///< empty selects 1..50
    long j_max = 500;
    std::optional<long> j;
    int branch_index = 0;
    double epsilon = 0.0;
    int nx = 16;
    int nt = 16;
    double collision_tol = 1e-9;
};

nlohmann::json config_to_json(const RunConfig& c);
/// Unknown keys at any level are rejected with ConfigError.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Writes `text` to `path`, or throws Error if the file cannot be opened.
void write_text(const std::string& path, const std::string& text);

} // namespace tumorbif
