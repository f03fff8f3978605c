#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "groupcast/covering.hpp"
#include "groupcast/regions.hpp"

namespace groupcast {

using Json = nlohmann::json;

// Labels are arrays of receiver indices: [1,2,4].
Json label_to_json(SubsetLabel s);
SubsetLabel label_from_json(const Json& j);
Json labels_to_json(const std::vector<SubsetLabel>& v);
std::vector<SubsetLabel> labels_from_json(const Json& j);

// Rationals are "p/q" strings on output; input also accepts JSON numbers
// (doubles convert exactly).
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

// {"kind": "inclusion"|"discrete", "K": int, "labels": [[...],...]} with
// "pairs": [[S,S'],...] for explicit orders.
Json order_to_json(const SuperpositionOrder& o);
SuperpositionOrder order_from_json(const Json& j);

// {"terms": {"H(Q,U_1)": "p/q", ...}, "const": "p/q"}.
Json expr_to_json(const EntropyExpr& e);
EntropyExpr expr_from_json(const Json& j);

// {"variables": [names], "rows": [{"coeffs": {...}, "rhs": {...}, "note":
// ..., "rhs_nonneg": ...}]}; coeffs keep nonzero entries only.
Json system_to_json(const InequalitySystem& sys);
InequalitySystem system_from_json(const Json& j);

// {"values": {"H(U_1)": value, ...}}.
Json assignment_to_json(const EntropyAssignment& a);
EntropyAssignment assignment_from_json(const Json& j);

// {"symbols": ["Q","U_1",...], "cardinalities": [...], "pmf": [...]}; the
// pmf is dense with the last symbol varying fastest.
Json distribution_to_json(const JointDistribution& d);
JointDistribution distribution_from_json(const Json& j);

// {"combination": {"K": int, "components": {"[1,2]": bits, ...}}} or
// {"table": {"x_size": int, "y_sizes": [...], "w": [...]}}.
Json channel_to_json(const CombinationNetwork& net);
Json channel_to_json(const TabularBC& bc);
struct ChannelSpec {
  std::optional<CombinationNetwork> combination;
  std::optional<TabularBC> table;

  TabularBC to_table() const;
};
ChannelSpec channel_from_json(const Json& j);

// {"order": ..., "q_pmf": [...], "u_sizes": [...], "conditionals": [rows or
// flat per label], "x_size": int, "input_map": [...], "channel": ...?}.
Json admissible_to_json(const AdmissibleSpec& spec);
AdmissibleSpec admissible_from_json(const Json& j);

// A build job: the problem plus which construction to run.
struct BuildRequest {
  ProblemSpec spec;
  // split | minkowski | receivers | receivers_all_subsets | binning
  std::string construction = "split";
  std::optional<std::vector<std::pair<SubsetLabel, SubsetLabel>>> split_pairs;
  bool tilde_dominates_hat = false;

  InequalitySystem build(const FmOptions& opts = {}) const;
};
Json build_request_to_json(const BuildRequest& r);
BuildRequest build_request_from_json(const Json& j);

Json gamma_table_to_json(const GammaTable& t);

// {"order": ..., "cardinalities": [...], "target": [...], "rates": [...],
// "n": int, "eps": real, "trials": int, "seed": int, "cap": int}.
Json covering_experiment_to_json(const CoveringExperiment& exp);
CoveringExperiment covering_experiment_from_json(const Json& j);
// {"estimate", "half_width", "trials", "successes", "n", "seed"}.
Json covering_result_to_json(const CoveringExperiment& exp,
                             const CoveringResult& res);

Json load_json(const std::string& path);
// Atomic: writes a sibling temp file, then renames over the target.
void save_json(const std::string& path, const Json& j);
std::string json_text(const Json& j);  // 2-space indent, trailing newline

}  // namespace groupcast
