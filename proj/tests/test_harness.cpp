#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "costboost/errors.hpp"
#include "costboost/harness.hpp"
#include "test_util.hpp"

using namespace costboost;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("grid oracle: 0-1 value, closed form, singleton, capacity") {
    const CostMatrix zo2 = CostMatrix::zero_one(2);
    CHECK(std::fabs(oracle_game_value(zo2, full_set(2), 1e-3) - 0.5) <= 1e-3);

    const CostMatrix w = CostMatrix::binary(1.0, 0.25);
    CHECK(std::fabs(oracle_game_value(w, full_set(2), 1e-3) - 0.2) <= 2e-3);

    CHECK(oracle_game_value(CostMatrix::zero_one(3), set_of({1}), 1e-2) == 0.0);

    CHECK_THROWS_AS(oracle_game_value(CostMatrix::zero_one(4), full_set(4), 1e-2),
                    CapacityError);
    CHECK_THROWS_AS(oracle_game_value(zo2, full_set(2), 1e-5), InputError);
}

TEST_CASE("grid oracle refines monotonically toward the LP value") {
    Rng rng(404);
    const CostMatrix w = random_cost(3, rng);
    const double lp = game_value(w, full_set(3)).value;
    const double coarse = oracle_game_value(w, full_set(3), 1e-1);
    const double mid = oracle_game_value(w, full_set(3), 1e-2);
    // The grid minimum over a refinement never moves away from the LP value.
    CHECK(coarse >= lp - 1e-9);
    CHECK(mid >= lp - 1e-9);
    CHECK(mid <= coarse + 1e-12);
    CHECK(std::fabs(mid - lp) <= 2e-2);
}

TEST_CASE("oracle report passes exactly when the discrepancy fits the tolerance") {
    const OracleReport good = make_oracle_report("x", 0.5, 0.5004, 1e-3);
    CHECK(good.pass);
    const OracleReport bad = make_oracle_report("x", 0.5, 0.52, 1e-3);
    CHECK(!bad.pass);
}

TEST_CASE("binary dichotomy: boostable below V, trivial at and above it") {
    json params;
    params["cost"] = to_json(CostMatrix::binary(1.0, 1.0));
    params["z_values"] = {0.3, 0.5, 0.6};
    params["domain_size"] = 40;
    params["m"] = 700;
    params["m_hat"] = 4000;
    const json report = run_dichotomy_binary(params, 11);
    CHECK(report.at("pass").get<bool>());
    REQUIRE(report.at("cells").size() == 3);
    CHECK(report["cells"][0]["expected"] == "boostable");
    CHECK(report["cells"][0]["consistent"].get<bool>());
    CHECK(report["cells"][1]["expected"] == "trivial");
    CHECK(report["cells"][1]["boost_rejected"].get<bool>());
    CHECK(report["cells"][2]["boost_rejected"].get<bool>());
    for (const json& oracle : report.at("oracle_reports"))
        CHECK(oracle.at("pass").get<bool>());
}

TEST_CASE("dichotomy transition tracks the closed form for asymmetric costs") {
    json params;
    params["cost"] = to_json(CostMatrix::binary(1.0, 0.25));  // V = 0.2
    params["z._ignore"] = 0;
    params["z_values"] = {0.1, 0.2};
    params["domain_size"] = 40;
    params["m"] = 700;
    params["m_hat"] = 4000;
    const json report = run_dichotomy_binary(params, 13);
    CHECK(report.at("pass").get<bool>());
    CHECK(report["cells"][0]["expected"] == "boostable");
    CHECK(report["cells"][1]["expected"] == "trivial");
}

TEST_CASE("multichotomy at the 0-1 k = 3 bucket [1/2, 2/3)") {
    json params;
    params["cost"] = to_json(CostMatrix::zero_one(3));
    params["z"] = 0.55;
    params["domain_size"] = 40;
    params["m"] = 1000;
    params["m_hat"] = 6000;
    const json report = run_multichotomy(params, 19);
    CHECK(report.at("bucket").get<int>() == 2);
    CHECK(report.at("v_n").get<double>() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(report.at("achieved").at("pass").get<bool>());
    CHECK(report.at("floor").at("pass").get<bool>());
    CHECK(report.at("pass").get<bool>());
}

TEST_CASE("multichotomy at z = 0 achieves zero loss") {
    json params;
    params["cost"] = to_json(CostMatrix::zero_one(3));
    params["z"] = 0.0;
    params["domain_size"] = 30;
    params["m"] = 400;
    params["m_hat"] = 600;
    const json report = run_multichotomy(params, 23);
    CHECK(report.at("bucket").get<int>() == 1);
    CHECK(report.at("achieved").at("holdout_loss").get<double>() <= 0.02);
    CHECK(report.at("pass").get<bool>());
}

TEST_CASE("region trace experiment checks the sqrt curve and the envelope") {
    json params;
    params["resolution"] = 20;
    params["alpha_grid"] = 150;
    const json report = run_region_trace(params, 3);
    CHECK(report.at("pass").get<bool>());
    CHECK(report.at("sqrt_curve_max_deviation").get<double>() <= 5e-3);
    CHECK(report.at("envelope_discrepancy").get<double>() <= 5e-3);
    CHECK(report.at("csv").get<std::string>().rfind("z1,z2,attainable\n", 0) == 0);
}

TEST_CASE("equivalence experiment passes both directions at desk scale") {
    json params;
    params["z"] = {0.1, 0.4};
    params["domain_size"] = 60;
    params["m"] = 1000;
    params["m_hat"] = 5000;
    const json report = run_equivalence(params, 29);
    CHECK(report.at("forward").at("pass").get<bool>());
    CHECK(report.at("forward").at("max_slack").get<double>() <= 0.05);
    for (const json& frac : report.at("forward").at("violation_fractions"))
        CHECK(frac.get<double>() <= 1.0 / (5 * 2) + 0.02);
    CHECK(report.at("converse").at("pass").get<bool>());
    CHECK(report.at("pass").get<bool>());
}

TEST_CASE("run_experiment writes byte-identical reports under a fixed seed") {
    json config_json;
    config_json["experiment"] = "region-trace";
    config_json["seed"] = 5;
    config_json["params"] = json{{"resolution", 10}, {"alpha_grid", 150}};

    const auto tmp = std::filesystem::temp_directory_path();
    config_json["output_dir"] = (tmp / "costboost_run_a").string();
    const ExperimentResult a = run_experiment(experiment_config_from_json(config_json));
    config_json["output_dir"] = (tmp / "costboost_run_b").string();
    const ExperimentResult b = run_experiment(experiment_config_from_json(config_json));

    CHECK(a.ok);
    CHECK(std::filesystem::exists(a.run_dir / "report.json"));
    CHECK(std::filesystem::exists(a.run_dir / "boundary.csv"));
    CHECK(slurp(a.run_dir / "report.json") == slurp(b.run_dir / "report.json"));
    CHECK(slurp(a.run_dir / "boundary.csv") == slurp(b.run_dir / "boundary.csv"));
    std::filesystem::remove_all(a.run_dir.parent_path());
    std::filesystem::remove_all(b.run_dir.parent_path());
}

TEST_CASE("experiment configs demand a seed and a known id") {
    json bad;
    bad["experiment"] = "region-trace";
    CHECK_THROWS_AS(experiment_config_from_json(bad), InputError);

    json unknown;
    unknown["experiment"] = "no-such-thing";
    unknown["seed"] = 1;
    CHECK_THROWS_AS(run_experiment(experiment_config_from_json(unknown)), InputError);
}

TEST_CASE("JSON round trips: cost, multicost, instance, subsets") {
    Rng rng(12);
    const CostMatrix w = random_cost(4, rng);
    CHECK(cost_from_json(to_json(w)).entries == w.entries);

    const MultiCost pop = MultiCost::population_driven();
    CHECK(multicost_from_json(to_json(pop)).costs[0].entries == pop.costs[0].entries);

    const Instance inst = random_instance(25, 3, 9);
    const Instance back = instance_from_json(to_json(inst));
    CHECK(back.target == inst.target);

    CHECK(subset_from_labels_1based({1, 3}, 3) == set_of({0, 2}));
    CHECK(subset_to_labels_1based(set_of({0, 2})) == std::vector<int>{1, 3});
    CHECK_THROWS_AS(subset_from_labels_1based({0}, 3), InputError);
    CHECK_THROWS_AS(subset_from_labels_1based({4}, 3), InputError);
}

TEST_CASE("cost JSON validation catches malformed files") {
    CHECK_THROWS_AS(cost_from_json(json{{"k", 2}}), InputError);
    CHECK_THROWS_AS(cost_from_json(json{{"k", 2}, {"entries", {{0.0, 1.0}}}}), InputError);
}
