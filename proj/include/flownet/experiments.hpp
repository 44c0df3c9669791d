#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "flownet/graph.hpp"
#include "flownet/inverse_design.hpp"
#include "flownet/percolation.hpp"
#include "flownet/random_ensembles.hpp"

namespace flownet {

/// Node counts above this need FlowStatsConfig::allow_large.
inline constexpr std::size_t kDeskScaleMaxN = 3000;

struct FlowStatsConfig {
  std::vector<std::size_t> n_list{50, 200, 1000};
  std::vector<double> degree_list;
  WeightModel weights = WeightModel::identical();
  std::size_t trials = 50;
  std::size_t pairs = 20;
  std::uint64_t seed = 0;
  bool allow_large = false;
  FlowMethod method = FlowMethod::automatic;
};

/// CSV columns: n, mean_degree, weight_model, trials, sim_rho_n,
/// sim_rho_n_std, sim_rho_l, sim_rho_l_std, pred_rho_n, pred_rho_l,
/// pred_bound_rho_l. One row per (n, mean degree), n-major.
void run_flow_stats(const FlowStatsConfig& config, std::ostream& csv);

struct RgpEvalConfig {
  std::string baseline = "tree";  // "tree" or "er"
  std::vector<std::size_t> n_list{10, 20, 30};
  std::vector<double> p_list{0.5};
  WeightModel weights = WeightModel::integer_uniform(1, 10);
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::vector<std::string> methods{"rgp", "fiedler"};
  /// When false runtime_ms is written as 0 so output is byte-reproducible.
  bool timing = true;
};

/// CSV columns: method, n, p_or_tree, trial, additional_links_norm,
/// common_link_ratio, relative_norm, runtime_ms.
void run_rgp_eval(const RgpEvalConfig& config, std::ostream& csv);

/// The connected baseline used by rgp-eval for (n, p, trial); ER samples are
/// redrawn from derived seeds until connected.
WeightedGraph rgp_eval_baseline(const RgpEvalConfig& config, std::size_t n, double p,
                                std::uint64_t trial_seed);

struct SparsifyOutcome {
  WeightedGraph graph;
  RgpTrace trace;
  IerpMetrics metrics;
};

/// RGP on D = Omega(input); throws Disconnected for a disconnected input.
SparsifyOutcome sparsify(const WeightedGraph& input);
nlohmann::json to_json(const SparsifyOutcome& outcome);

/// omega, both power formulas, flow-subgraph sizes and backbone size.
nlohmann::json analyze(const WeightedGraph& g, NodeId source, NodeId destination);

/// "%.6g" formatting shared by every CSV writer.
std::string format_number(double v);

}  // namespace flownet
