// Command-line surface over the library: game values, threshold ladders,
// attainability verdicts, the boosting algorithms, and the experiment driver.
// Exit codes: 0 success, 1 contract error, 2 input/capacity error.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "costboost/errors.hpp"
#include "costboost/harness.hpp"

namespace cb = costboost;

namespace {

std::vector<int> parse_label_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw cb::InputError("bad label list \"" + csv + "\"");
        }
    }
    if (out.empty()) throw cb::InputError("empty label list \"" + csv + "\"");
    return out;
}

std::vector<double> parse_real_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw cb::InputError("bad numeric list \"" + csv + "\"");
        }
    }
    if (out.empty()) throw cb::InputError("empty numeric list \"" + csv + "\"");
    return out;
}

cb::Instance load_or_generate_instance(const std::string& path, int domain_size, int k,
                                       std::uint64_t seed) {
    if (!path.empty()) return cb::instance_from_json(cb::load_json_file(path));
    return cb::random_instance(domain_size, k, cb::derive_seed(seed, 0x1257));
}

struct BoostFlags {
    std::string cost_file;
    std::string instance_file;
    double z = -1.0;
    int m = 2000;
    int domain_size = 150;
    double holdout_fraction = 0.5;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_file;
    cb::BoostConfig cfg;

    void add_common(CLI::App* app) {
        app->add_option("--z", z, "Declared guarantee z of the weak learner")->required();
        app->add_option("--m", m, "Total points drawn (split train/holdout)");
        app->add_option("--instance", instance_file, "Instance JSON (generated when absent)");
        app->add_option("--domain-size", domain_size, "Domain size for generated instances");
        app->add_option("--holdout-fraction", holdout_fraction, "Holdout split fraction");
        app->add_option("--seed", seed, "RNG seed (mandatory)")->required();
        app->add_option("--out", out_file, "Write the run report JSON here");
        app->add_option("--rounds", cfg.T, "Override the derived round count T");
        app->add_option("--eta", cfg.eta, "Override the derived learning rate");
        app->add_option("--m-hat", cfg.m_hat, "Override the derived per-round sample size");
        app->add_option("--sigma", cfg.sigma, "List slack sigma (derived when 0)");
        app->add_option("--delta", cfg.delta, "Confidence parameter");
        app->add_option("--max-rounds", cfg.max_rounds, "Guard on the derived T");
    }
};

void emit_report(const std::string& out_file, const cb::json& report) {
    if (!out_file.empty()) cb::write_json_file(out_file, report);
}

int run(int argc, char** argv) {
    CLI::App app{"cost-sensitive and multi-objective boosting toolkit"};
    app.require_subcommand(1);

    // game-value
    auto* gv_cmd = app.add_subcommand("game-value", "Restricted game value V_J(w)");
    std::string gv_cost, gv_subset;
    bool gv_oracle = false;
    double gv_step = 1e-3;
    gv_cmd->add_option("--cost", gv_cost, "Cost matrix JSON file")->required();
    gv_cmd->add_option("--subset", gv_subset, "Restriction J as 1-based labels, e.g. \"1,2\"");
    gv_cmd->add_flag("--oracle", gv_oracle, "Cross-check against the grid oracle");
    gv_cmd->add_option("--step", gv_step, "Oracle grid step");

    // thresholds
    auto* th_cmd = app.add_subcommand("thresholds", "Threshold ladder of a cost matrix");
    std::string th_cost, th_out;
    th_cmd->add_option("--cost", th_cost, "Cost matrix JSON file")->required();
    th_cmd->add_option("--out", th_out, "Write ladder JSON here (stdout otherwise)");

    // attainable
    auto* at_cmd = app.add_subcommand("attainable", "Coin/dice attainability verdict");
    std::string at_costs, at_z, at_subset, at_out;
    bool at_cross = false, at_sweep = false;
    at_cmd->add_option("--costs", at_costs, "MultiCost JSON file")->required();
    at_cmd->add_option("--z", at_z, "Guarantee vector, e.g. \"0.25,0.25\"")->required();
    at_cmd->add_option("--subset", at_subset, "Dice restriction J (coin when absent)");
    at_cmd->add_flag("--cross-check", at_cross, "Also run the duality sweep");
    at_cmd->add_flag("--duality-sweep", at_sweep, "Decide by the alpha sweep instead of grids");
    at_cmd->add_option("--out", at_out, "Write verdict JSON here");

    // precedes
    auto* pr_cmd = app.add_subcommand("precedes", "Partial order z -> z' under w");
    std::string pr_costs, pr_z, pr_zp;
    pr_cmd->add_option("--costs", pr_costs, "MultiCost JSON file")->required();
    pr_cmd->add_option("--z", pr_z, "Guarantee vector z")->required();
    pr_cmd->add_option("--z-prime", pr_zp, "Guarantee vector z'")->required();

    // boost-binary
    auto* bb_cmd = app.add_subcommand("boost-binary", "Binary cost-sensitive boosting");
    BoostFlags bb;
    bb_cmd->add_option("--cost", bb.cost_file, "Cost matrix JSON file (k = 2)")->required();
    bb.add_common(bb_cmd);

    // boost-list
    auto* bl_cmd = app.add_subcommand("boost-list", "Weak-to-list boosting");
    BoostFlags bl;
    int bl_s = 0;
    bl_cmd->add_option("--cost", bl.cost_file, "Cost matrix JSON file")->required();
    bl_cmd->add_option("--max-list-size", bl_s,
                       "Boost to lists of at most this size (0 = value-bounded lists)");
    bl.add_common(bl_cmd);

    // boost-mo
    auto* bm_cmd = app.add_subcommand("boost-mo", "Cost-sensitive to multi-objective boosting");
    BoostFlags bm;
    std::string bm_costs, bm_z, bm_factory = "planted-mo";
    bm_cmd->add_option("--costs", bm_costs, "MultiCost JSON file")->required();
    bm_cmd->add_option("--z-vector", bm_z, "Guarantee vector, e.g. \"0.1,0.4\"")->required();
    bm_cmd->add_option("--factory", bm_factory,
                       "Scalar learner family: planted-mo | planted-scalar");
    bm.z = 0.0;  // unused; the vector flag drives boost-mo
    bm_cmd->add_option("--m", bm.m, "Total points drawn (split train/holdout)");
    bm_cmd->add_option("--instance", bm.instance_file, "Instance JSON");
    bm_cmd->add_option("--domain-size", bm.domain_size, "Domain size for generated instances");
    bm_cmd->add_option("--holdout-fraction", bm.holdout_fraction, "Holdout split fraction");
    bm_cmd->add_option("--seed", bm.seed, "RNG seed (mandatory)")->required();
    bm_cmd->add_option("--out", bm.out_file, "Write the run report JSON here");
    bm_cmd->add_option("--rounds", bm.cfg.T, "Override the derived round count T");
    bm_cmd->add_option("--m-hat", bm.cfg.m_hat, "Override the derived per-round sample size");
    bm_cmd->add_option("--delta", bm.cfg.delta, "Confidence parameter");

    // experiment
    auto* ex_cmd = app.add_subcommand("experiment", "Run a config-driven experiment");
    std::string ex_config;
    ex_cmd->add_option("--config", ex_config, "Experiment config JSON")->required();

    CLI11_PARSE(app, argc, argv);

    if (gv_cmd->parsed()) {
        const cb::CostMatrix w = cb::cost_from_json(cb::load_json_file(gv_cost));
        const cb::LabelSet J = gv_subset.empty()
                                   ? cb::full_set(w.k)
                                   : cb::subset_from_labels_1based(parse_label_list(gv_subset), w.k);
        const cb::GameValue gv = cb::game_value(w, J);
        std::cout << cb::format_fixed9(gv.value) << "\n";
        std::ostringstream strat;
        for (int i = 0; i < w.k; ++i) {
            if (i) strat << " ";
            strat << cb::format_fixed9(gv.minimax_strategy[i]);
        }
        std::cout << "p = " << strat.str() << "\n";
        if (gv_oracle) {
            const double oracle = cb::oracle_game_value(w, J, gv_step);
            const cb::OracleReport rep =
                cb::make_oracle_report("game value", oracle, gv.value, 2.0 * gv_step);
            std::cout << "oracle = " << cb::format_fixed9(oracle)
                      << " |diff| = " << cb::format_fixed9(rep.discrepancy)
                      << (rep.pass ? " pass" : " FAIL") << "\n";
            if (!rep.pass) return 1;
        }
        return 0;
    }

    if (th_cmd->parsed()) {
        const cb::CostMatrix w = cb::cost_from_json(cb::load_json_file(th_cost));
        const cb::json ladder = cb::to_json(cb::threshold_ladder(w));
        if (th_out.empty()) std::cout << ladder.dump(2) << "\n";
        else cb::write_json_file(th_out, ladder);
        return 0;
    }

    if (at_cmd->parsed()) {
        const cb::MultiCost w = cb::multicost_from_json(cb::load_json_file(at_costs));
        const cb::GuaranteeVector z{parse_real_list(at_z)};
        cb::AttainabilityConfig cfg;
        cfg.cross_check = at_cross;
        if (at_sweep) cfg.mode = cb::DecisionMode::DualitySweep;
        const cb::LabelSet J =
            at_subset.empty() ? cb::full_set(w.k())
                              : cb::subset_from_labels_1based(parse_label_list(at_subset), w.k());
        const cb::AttainabilityVerdict verdict = cb::is_dice_attainable(w, z, J, cfg);
        std::cout << (verdict.attainable ? "attainable" : "not attainable") << "\n";
        emit_report(at_out, cb::to_json(verdict));
        return 0;
    }

    if (pr_cmd->parsed()) {
        const cb::MultiCost w = cb::multicost_from_json(cb::load_json_file(pr_costs));
        const bool result = cb::precedes(w, cb::GuaranteeVector{parse_real_list(pr_z)},
                                         cb::GuaranteeVector{parse_real_list(pr_zp)});
        std::cout << (result ? "true" : "false") << "\n";
        return 0;
    }

    if (bb_cmd->parsed()) {
        const cb::CostMatrix w = cb::cost_from_json(cb::load_json_file(bb.cost_file));
        const cb::Instance inst =
            load_or_generate_instance(bb.instance_file, bb.domain_size, w.k, bb.seed);
        cb::Rng rng(cb::derive_seed(bb.seed, 0xD4A7));
        const auto points = cb::draw_points(bb.m, inst.domain_size, rng);
        const int train_m = bb.m - static_cast<int>(bb.m * bb.holdout_fraction);
        const std::vector<int> train(points.begin(), points.begin() + train_m);
        const std::vector<int> holdout(points.begin() + train_m, points.end());
        bb.cfg.seed = bb.seed;
        const cb::WeakLearner learner = cb::planted_noise_learner(w, bb.z, inst);
        cb::BinaryBoostResult res = cb::boost_binary(w, learner, bb.z, inst, train, bb.cfg);
        if (!holdout.empty())
            res.report.holdout_losses = {cb::empirical_loss(w, res.hypothesis, inst, holdout)};
        std::cout << (res.report.consistent ? "consistent" : "inconsistent") << "\n";
        emit_report(bb.out_file, cb::to_json(res.report));
        return 0;
    }

    if (bl_cmd->parsed()) {
        const cb::CostMatrix w = cb::cost_from_json(cb::load_json_file(bl.cost_file));
        const cb::Instance inst =
            load_or_generate_instance(bl.instance_file, bl.domain_size, w.k, bl.seed);
        cb::Rng rng(cb::derive_seed(bl.seed, 0xD4A8));
        const auto points = cb::draw_points(bl.m, inst.domain_size, rng);
        const int train_m = bl.m - static_cast<int>(bl.m * bl.holdout_fraction);
        const std::vector<int> train(points.begin(), points.begin() + train_m);
        const std::vector<int> holdout(points.begin() + train_m, points.end());
        bl.cfg.seed = bl.seed;
        const cb::WeakLearner learner = cb::planted_noise_learner(w, bl.z, inst);
        cb::json report;
        cb::Hypothesis h;
        if (bl_s > 0) {
            cb::SListBoostResult res = cb::boost_to_s_list(w, learner, bl.z, inst, train, bl.cfg);
            h = cb::s_list_to_weak(w, res.mu, res.s);
            report = cb::to_json(res.report);
            report["s"] = res.s;
            report["max_list_size"] = res.mu.max_list_size();
        } else {
            cb::ListBoostResult res = cb::boost_to_list(w, learner, bl.z, inst, train, bl.cfg);
            h = cb::list_to_weak(w, res.mu, bl.z + res.report.sigma);
            report = cb::to_json(res.report);
            report["max_list_size"] = res.mu.max_list_size();
        }
        if (!holdout.empty())
            report["holdout_losses"] = {cb::empirical_loss(w, h, inst, holdout)};
        std::cout << (report.at("consistent").get<bool>() ? "consistent" : "inconsistent")
                  << "\n";
        emit_report(bl.out_file, report);
        return 0;
    }

    if (bm_cmd->parsed()) {
        const cb::MultiCost w = cb::multicost_from_json(cb::load_json_file(bm_costs));
        const cb::GuaranteeVector z{parse_real_list(bm_z)};
        const cb::Instance inst =
            load_or_generate_instance(bm.instance_file, bm.domain_size, w.k(), bm.seed);
        cb::Rng rng(cb::derive_seed(bm.seed, 0xD4A9));
        const auto points = cb::draw_points(bm.m, inst.domain_size, rng);
        const int train_m = bm.m - static_cast<int>(bm.m * bm.holdout_fraction);
        const std::vector<int> train(points.begin(), points.begin() + train_m);
        const std::vector<int> holdout(points.begin() + train_m, points.end());
        bm.cfg.seed = bm.seed;
        cb::ScalarLearnerFn factory;
        if (bm_factory == "planted-mo")
            factory = cb::factory_from_learner(cb::planted_noise_learner(w, z, inst));
        else if (bm_factory == "planted-scalar")
            factory = cb::factory_from_scalar_planted(w, z, inst);
        else
            throw cb::InputError("unknown factory \"" + bm_factory + "\"");
        cb::MoBoostResult res = cb::boost_mo(w, factory, z, inst, train, bm.cfg);
        res.report.holdout_losses.resize(w.r());
        for (int i = 0; i < w.r(); ++i)
            res.report.holdout_losses[i] =
                cb::empirical_loss(w.costs[i], res.mixture, inst, holdout);
        bool met = true;
        for (int i = 0; i < w.r(); ++i)
            if (res.report.holdout_losses[i] > z[i] + bm.cfg.epsilon) met = false;
        std::cout << (met ? "met" : "missed") << "\n";
        emit_report(bm.out_file, cb::to_json(res.report));
        return 0;
    }

    if (ex_cmd->parsed()) {
        const cb::ExperimentConfig config =
            cb::experiment_config_from_json(cb::load_json_file(ex_config));
        const cb::ExperimentResult result = cb::run_experiment(config);
        std::cout << result.run_dir.string() << "\n";
        std::cout << (result.ok ? "pass" : "fail") << "\n";
        return result.ok ? 0 : 1;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cb::ContractError& e) {
        std::cerr << "contract error: " << e.what() << "\n";
        return 1;
    } catch (const cb::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const cb::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
