#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simstab/cee.hpp"
#include "simstab/problem.hpp"

namespace simstab {

/// Tolerance knobs exposed through the config file and CLI overrides.
struct Tolerances {
    double reduce = 1e-9;      ///< approximate GCD / coprimality
    double roots = 1e-12;      ///< root-finder residual
    double solver = 1e-12;     ///< Newton residual target
    double properness = 1e-6;  ///< |1 + k(inf) p_lambda(inf)| threshold
    double stability = 1e-9;   ///< |z| < 1 - stability margin
};

/// Parsed plant-family configuration.
struct PlantConfig {
    PlantPair plants;
    std::optional<RealPoly> sigma;     ///< explicit sigma (validated against n later)
    std::optional<double> sigma_zero;  ///< sigma = (z - zero)^n shorthand
    std::vector<double> lambda_grid;   ///< defaults to 0:0.1:1 when empty
    Tolerances tol;
};

/// Parse the JSON config text. Rational functions come either factored
/// ({"zeros": [...], "poles": [...], "gain": g}) or as coefficient lists
/// ({"num": [...], "den": [...]}, highest degree first). Numeric entries
/// may be JSON numbers or strings holding decimals or rationals such as
/// "3169/165". Throws InputError with the offending path on failure.
PlantConfig parse_config(const std::string& json_text);

/// Read and parse a config file.
PlantConfig load_config(const std::string& path);

/// Parse one rational-function JSON object (used for `verify --k FILE`).
RatFun parse_ratfun_file(const std::string& path, double reduce_tol = 1e-9);

/// Parse a lambda grid spec: "0:0.1:1" or "0,0.25,0.5,1".
std::vector<double> parse_lambda_grid(const std::string& text);

} // namespace simstab
