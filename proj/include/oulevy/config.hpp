#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oulevy/girsanov.hpp"
#include "oulevy/levy.hpp"
#include "oulevy/spectral_model.hpp"

namespace oulevy {

// A model sequence is either a literal array or a closed-form expression in
// the mode index n; when all three of a, a_tilde, q are expressions the model
// also carries a lazy symbolic view up to n_max for the series scans.
struct SequenceSpec {
    std::vector<double> values;  // used when expr empty
    std::string expr;

    bool is_expr() const { return !expr.empty(); }
};

struct ModelSpec {
    int dim = 8;
    int n_max = 512;
    SequenceSpec a, a_tilde, q;
    std::string xi_expr;  // optional single-jump profile for symbolic scans
};

struct JumpLawSpec {
    std::string kind;  // diagonal_gaussian | deterministic_profile | scalar_student_t | point_mass
    std::vector<double> sigma;
    std::vector<double> xi;
    double nu = 3.0;
};

struct LevySpec {
    std::vector<double> drift_b;  // empty = zero drift
    bool gaussian_enabled = true;
    double rate_lambda = 0.0;
    JumpLawSpec jump_law;
};

struct GridSpec {
    double T = 1.0;
    int base_steps = 256;
};

struct LambdaGridSpec {
    double mod_min = 1e-3;
    double mod_max = 1e3;
    int moduli = 61;
    int rays = 5;
};

struct RunSpec {
    double beta = 0.25;
    double theta = 0.7853981633974483;  // pi/4
    LambdaGridSpec lambda_grid;
    int replicas = 10000;
    std::uint64_t master_seed = 1;
    double epsilon = 0.0;  // rigidity threshold; <= 0 selects the default
    std::string functional = "coordinate";
    std::string weight_mode = "full_density";
    double jump_time = 0.5;  // single-jump time for symbolic norm scans
};

struct OutputSpec {
    std::string directory = "out";
    std::vector<std::string> formats{"json"};
};

struct ExperimentConfig {
    ModelSpec model;
    LevySpec levy;
    GridSpec grid;
    RunSpec run;
    OutputSpec output;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

// Canonical resolved form; parse(resolved_json(c)) == c.
nlohmann::json resolved_json(const ExperimentConfig& cfg);

SpectralModel build_model(const ExperimentConfig& cfg);
LevyConfig build_levy(const ExperimentConfig& cfg, int dim);
Functional parse_functional(const std::string& name);
WeightMode parse_weight_mode(const std::string& name);

}  // namespace oulevy
