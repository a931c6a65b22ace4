#ifndef COSTBOOST_HARNESS_HPP
#define COSTBOOST_HARNESS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "costboost/boosting.hpp"
#include "costboost/json_io.hpp"

namespace costboost {

// Brute-force baseline for V_J(w): exhaustive minimum over the Delta_Y grid of
// the maximum over the Delta_J grid of the expected cost. The inner maximum of
// the bilinear form over a simplex grid sits at a vertex, so it is evaluated
// there exactly. k <= 3 and step in [1e-3, 1e-1].
double oracle_game_value(const CostMatrix& w, LabelSet J, double grid_step);

struct OracleReport {
    std::string quantity;
    double oracle_value = 0.0;
    double fast_value = 0.0;
    double discrepancy = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

OracleReport make_oracle_report(std::string quantity, double oracle_value, double fast_value,
                                double tolerance);
json to_json(const OracleReport& report);

CostMatrix random_cost(int k, Rng& rng);
std::vector<int> draw_points(int n_draws, int domain_size, Rng& rng);

struct ExperimentConfig {
    std::string experiment;  // dichotomy-binary | multichotomy | region-trace | equivalence
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = "runs";
    json params = json::object();
};

ExperimentConfig experiment_config_from_json(const json& j);

struct ExperimentResult {
    std::filesystem::path run_dir;
    json report;
    bool ok = false;
};

// z sweep across V(w): below the threshold the planted learner boosts to a
// consistent rule; at or above it the coin learner certifies (w, z) and
// boost_binary rejects with the threshold-citing contract error.
json run_dichotomy_binary(const json& params, std::uint64_t seed);

// Bucket reproduction: boost_to_list + list_to_weak lands within the z-bucket
// floor v_n on a random instance, and the coin-on-J construction shows the
// pipeline cannot go below v_n.
json run_multichotomy(const json& params, std::uint64_t seed);

// Boundary trace plus the halfspace-envelope cross-check; for the
// population-driven pair also checks the sqrt(z1) + sqrt(z2) = 1 curve.
json run_region_trace(const json& params, std::uint64_t seed);

// Both directions of the scalarization equivalence at desk scale.
json run_equivalence(const json& params, std::uint64_t seed);

// Dispatches on config.experiment, writes report.json (and any CSV tables)
// into <output_dir>/<experiment>-seed<seed>/.
ExperimentResult run_experiment(const ExperimentConfig& config);

} // namespace costboost

#endif
