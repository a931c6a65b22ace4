#ifndef COSTBOOST_JSON_IO_HPP
#define COSTBOOST_JSON_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "costboost/attainability.hpp"
#include "costboost/boosting.hpp"
#include "costboost/games.hpp"
#include "costboost/learners.hpp"

namespace costboost {

using json = nlohmann::json;

// All file formats carry 1-based labels (Y = [k]); the in-memory API is 0-based.

json to_json(const CostMatrix& w);           // {"k": int, "entries": [[row-major]]}
CostMatrix cost_from_json(const json& j);

json to_json(const MultiCost& w);            // {"r": int, "k": int, "costs": [...]}
MultiCost multicost_from_json(const json& j);

json to_json(const Instance& inst);          // {"domain_size": N, "k": k, "target": [1-based]}
Instance instance_from_json(const json& j);

json to_json(const ThresholdLadder& ladder); // witnesses as sorted 1-based label lists
json to_json(const GameValue& gv);
json to_json(const AttainabilityVerdict& verdict);
json to_json(const RegretLedger& ledger);
json to_json(const BoostReport& report);
json to_json(const MoBoostReport& report);
json to_json(const MoToMoReport& report);

std::vector<int> subset_to_labels_1based(LabelSet J);
LabelSet subset_from_labels_1based(const std::vector<int>& labels, int k);

json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

std::string format_fixed9(double v);

} // namespace costboost

#endif
