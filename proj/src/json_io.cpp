#include "costboost/json_io.hpp"

#include <cstdio>
#include <fstream>

#include "costboost/errors.hpp"

namespace costboost {

json to_json(const CostMatrix& w) {
    json rows = json::array();
    for (int i = 0; i < w.k; ++i) {
        json row = json::array();
        for (int j = 0; j < w.k; ++j) row.push_back(w(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"k", w.k}, {"entries", std::move(rows)}};
}

CostMatrix cost_from_json(const json& j) {
    if (!j.contains("k") || !j.contains("entries"))
        throw InputError("cost JSON: expected keys \"k\" and \"entries\"");
    const int k = j.at("k").get<int>();
    const json& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != k)
        throw InputError("cost JSON: entries must be a k x k array");
    CostMatrix w = CostMatrix::zeros(k);
    for (int i = 0; i < k; ++i) {
        const json& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != k)
            throw InputError("cost JSON: entries must be a k x k array");
        for (int jj = 0; jj < k; ++jj) w.at(i, jj) = row.at(jj).get<double>();
    }
    w.validate();
    return w;
}

json to_json(const MultiCost& w) {
    json costs = json::array();
    for (const CostMatrix& wi : w.costs) costs.push_back(to_json(wi));
    return json{{"r", w.r()}, {"k", w.k()}, {"costs", std::move(costs)}};
}

MultiCost multicost_from_json(const json& j) {
    if (!j.contains("costs")) throw InputError("multicost JSON: expected key \"costs\"");
    std::vector<CostMatrix> costs;
    for (const json& c : j.at("costs")) costs.push_back(cost_from_json(c));
    MultiCost w(std::move(costs));
    w.validate();
    return w;
}

json to_json(const Instance& inst) {
    json target = json::array();
    for (int y : inst.target) target.push_back(y + 1);
    return json{{"domain_size", inst.domain_size}, {"k", inst.k}, {"target", std::move(target)}};
}

Instance instance_from_json(const json& j) {
    Instance inst;
    inst.domain_size = j.at("domain_size").get<int>();
    inst.k = j.at("k").get<int>();
    for (const json& y : j.at("target")) inst.target.push_back(y.get<int>() - 1);
    inst.validate();
    return inst;
}

std::vector<int> subset_to_labels_1based(LabelSet J) {
    std::vector<int> out;
    for (int y : labels_of(J)) out.push_back(y + 1);
    return out;
}

LabelSet subset_from_labels_1based(const std::vector<int>& labels, int k) {
    LabelSet J = 0;
    for (int y : labels) {
        if (y < 1 || y > k)
            throw InputError("subset label " + std::to_string(y) + " outside 1.." +
                             std::to_string(k));
        J |= LabelSet{1} << (y - 1);
    }
    return J;
}

json to_json(const ThresholdLadder& ladder) {
    json witnesses = json::array();
    for (const auto& level_sets : ladder.witnesses) {
        json sets = json::array();
        for (LabelSet J : level_sets) sets.push_back(subset_to_labels_1based(J));
        witnesses.push_back(std::move(sets));
    }
    return json{{"k", ladder.k},
                {"levels", ladder.levels},
                {"witnesses", std::move(witnesses)},
                {"coarse_min", ladder.coarse_min},
                {"coarse_max", ladder.coarse_max}};
}

json to_json(const GameValue& gv) {
    return json{{"value", gv.value},
                {"minimax_strategy", gv.minimax_strategy.probs},
                {"subset", subset_to_labels_1based(gv.restriction)}};
}

json to_json(const AttainabilityVerdict& verdict) {
    json j{{"attainable", verdict.attainable},
           {"subset", subset_to_labels_1based(verdict.subset)},
           {"worst_violation", verdict.worst_violation}};
    if (verdict.separating_alpha) {
        j["separating_alpha"] = verdict.separating_alpha->probs;
        j["separation"] = verdict.separation;
    } else {
        j["separating_alpha"] = nullptr;
    }
    json cert = json::array();
    for (const GridWitness& wit : verdict.certificate)
        cert.push_back(json{{"q", wit.q}, {"p", wit.p}, {"costs", wit.costs}});
    j["certificate"] = std::move(cert);
    if (verdict.duality_decision) j["duality_decision"] = *verdict.duality_decision;
    return j;
}

json to_json(const RegretLedger& ledger) {
    return json{{"bound", ledger.bound},
                {"avg_environment_loss", ledger.avg_environment_loss},
                {"max_avg_index_loss", ledger.max_avg_index_loss},
                {"max_gap", ledger.max_gap}};
}

json to_json(const BoostReport& report) {
    json j{{"algorithm", report.algorithm},
           {"T", report.T},
           {"eta", report.eta},
           {"m_hat", report.m_hat},
           {"sigma", report.sigma},
           {"seed", report.seed},
           {"delta", report.delta},
           {"sample_size", report.sample_size},
           {"z", report.z},
           {"gamma", report.gamma},
           {"round_learner_losses", report.round_learner_losses},
           {"regret", to_json(report.regret)},
           {"consistent", report.consistent},
           {"holdout_losses", report.holdout_losses}};
    if (report.mutual_exclusion) j["mutual_exclusion"] = *report.mutual_exclusion;
    return j;
}

json to_json(const MoBoostReport& report) {
    return json{{"T", report.T},
                {"eta", report.eta},
                {"m_hat", report.m_hat},
                {"seed", report.seed},
                {"r", report.r},
                {"sample_size", report.sample_size},
                {"z", report.z},
                {"violation_counts", report.violation_counts},
                {"violation_fractions", report.violation_fractions},
                {"regret", to_json(report.regret)},
                {"sample_losses", report.sample_losses},
                {"holdout_losses", report.holdout_losses},
                {"selected_run", report.selected_run}};
}

json to_json(const MoToMoReport& report) {
    json avoided = json::array();
    for (LabelSet J : report.avoided_minimal) avoided.push_back(subset_to_labels_1based(J));
    return json{{"avoided_minimal", std::move(avoided)},
                {"witness_alphas", report.witness_alphas},
                {"witness_margins", report.witness_margins},
                {"max_intersected_list_size", report.max_intersected_list_size},
                {"degenerate_trivial", report.degenerate_trivial},
                {"recombination", to_json(report.recombination)},
                {"sample_losses", report.sample_losses}};
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError("bad JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

std::string format_fixed9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

} // namespace costboost
