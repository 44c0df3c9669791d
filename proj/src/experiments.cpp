#include "flownet/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "flownet/flow.hpp"
#include "flownet/laplacian.hpp"

namespace flownet {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  // Avoid "-0" in otherwise identical outputs.
  if (std::string(buf) == "-0") return "0";
  return buf;
}

void run_flow_stats(const FlowStatsConfig& config, std::ostream& csv) {
  if (config.n_list.empty()) throw Error(ErrorCode::InvalidArgument, "empty n list");
  if (config.degree_list.empty()) throw Error(ErrorCode::InvalidArgument, "empty degree list");
  if (config.trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (config.pairs == 0) throw Error(ErrorCode::InvalidArgument, "pairs must be >= 1");
  for (std::size_t n : config.n_list) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
    if (n > kDeskScaleMaxN && !config.allow_large)
      throw Error(ErrorCode::InvalidArgument,
                  "n = " + std::to_string(n) + " exceeds the desk-scale limit; pass --large");
    for (double deg : config.degree_list) {
      const double p = deg / static_cast<double>(n - 1);
      if (!(p > 0.0 && p <= 1.0))
        throw Error(ErrorCode::InvalidArgument,
                    "mean degree " + format_number(deg) + " invalid for n = " + std::to_string(n));
    }
  }

  csv << "n,mean_degree,weight_model,trials,sim_rho_n,sim_rho_n_std,sim_rho_l,sim_rho_l_std,"
         "pred_rho_n,pred_rho_l,pred_bound_rho_l\n";
  std::uint64_t grid = 0;
  for (std::size_t n : config.n_list) {
    for (double deg : config.degree_list) {
      const auto sweep =
          simulate_flow_fractions(n, deg, config.weights, config.trials, config.pairs,
                                  derive_seed(config.seed, grid++), config.method);
      const auto pred = predict(deg);
      const double p = deg / static_cast<double>(n - 1);
      csv << n << ',' << format_number(deg) << ',' << config.weights.name() << ','
          << config.trials << ',' << format_number(sweep.mean_rho_n()) << ','
          << format_number(sweep.std_rho_n()) << ',' << format_number(sweep.mean_rho_l()) << ','
          << format_number(sweep.std_rho_l()) << ',' << format_number(pred.expected_node_fraction)
          << ',' << format_number(pred.expected_link_fraction) << ','
          << format_number(equipotential_link_bound(n, p)) << '\n';
    }
  }
}

WeightedGraph rgp_eval_baseline(const RgpEvalConfig& config, std::size_t n, double p,
                                std::uint64_t trial_seed) {
  if (config.baseline == "tree") {
    return sample_tree({n, TreeModel{}, config.weights, trial_seed});
  }
  constexpr std::uint64_t kMaxDraws = 10000;
  for (std::uint64_t draw = 0; draw < kMaxDraws; ++draw) {
    auto g = sample_er({n, ErModel{p}, config.weights, derive_seed(trial_seed, draw)});
    if (is_connected(g)) return g;
  }
  throw Error(ErrorCode::Disconnected,
              "no connected ER sample after " + std::to_string(kMaxDraws) + " draws");
}

namespace {

struct EvalRow {
  std::string method;
  IerpMetrics metrics;
  bool failed = false;
  double runtime_ms = 0.0;
};

EvalRow run_method(const std::string& method, const DemandMatrix& demand,
                   const WeightedGraph& baseline) {
  EvalRow row;
  row.method = method;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (method == "rgp") {
      const auto out = rgp(demand);
      row.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      row.metrics = evaluate(demand, baseline, out.graph);
    } else {
      const auto out = fiedler_reconstruct(demand);
      row.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      row.metrics = evaluate(demand, baseline, out.graph);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotRealizable && e.code() != ErrorCode::SingularDemand) throw;
    row.failed = true;
  }
  return row;
}

}  // namespace

void run_rgp_eval(const RgpEvalConfig& config, std::ostream& csv) {
  if (config.baseline != "tree" && config.baseline != "er")
    throw Error(ErrorCode::InvalidArgument, "baseline must be 'tree' or 'er'");
  if (config.n_list.empty()) throw Error(ErrorCode::InvalidArgument, "empty n list");
  if (config.trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (config.methods.empty()) throw Error(ErrorCode::InvalidArgument, "no methods");
  for (const auto& m : config.methods)
    if (m != "rgp" && m != "fiedler") throw Error(ErrorCode::InvalidArgument, "unknown method " + m);
  for (std::size_t n : config.n_list)
    if (n < 2 || n > kDeskScaleMaxN) throw Error(ErrorCode::InvalidArgument, "n out of range");
  std::vector<double> ps = config.p_list;
  if (config.baseline == "tree") {
    ps = {0.0};
  } else {
    if (ps.empty()) throw Error(ErrorCode::InvalidArgument, "empty p list");
    for (double p : ps)
      if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "p outside (0, 1]");
  }

  csv << "method,n,p_or_tree,trial,additional_links_norm,common_link_ratio,relative_norm,"
         "runtime_ms\n";
  std::uint64_t grid = 0;
  for (std::size_t n : config.n_list) {
    for (double p : ps) {
      const std::uint64_t grid_seed = derive_seed(config.seed, grid++);
      std::vector<std::vector<EvalRow>> rows(config.trials);
      std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
      for (std::size_t t = 0; t < config.trials; ++t) {
        try {
          const auto baseline = rgp_eval_baseline(config, n, p, derive_seed(grid_seed, t));
          const auto demand = DemandMatrix::from_graph(baseline);
          for (const auto& m : config.methods) rows[t].push_back(run_method(m, demand, baseline));
        } catch (...) {
#pragma omp critical
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);

      const std::string label = config.baseline == "tree" ? "tree" : format_number(p);
      for (std::size_t t = 0; t < config.trials; ++t) {
        for (const auto& r : rows[t]) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          csv << r.method << ',' << n << ',' << label << ',' << t << ','
              << format_number(r.failed ? nan : r.metrics.additional_links_normalized) << ','
              << format_number(r.failed ? nan : r.metrics.common_link_ratio) << ','
              << format_number(r.failed ? nan : r.metrics.relative_norm) << ','
              << format_number(config.timing ? r.runtime_ms : 0.0) << '\n';
        }
      }
    }
  }
}

SparsifyOutcome sparsify(const WeightedGraph& input) {
  if (!is_connected(input)) throw Error(ErrorCode::Disconnected, "input graph is disconnected");
  const auto demand = DemandMatrix::from_graph(input);
  auto out = rgp(demand);
  auto metrics = evaluate(demand, input, out.graph);
  return {std::move(out.graph), std::move(out.trace), metrics};
}

nlohmann::json to_json(const SparsifyOutcome& o) {
  nlohmann::json j;
  j["nodes"] = o.graph.node_count();
  j["baseline_links"] = o.metrics.baseline_links;
  j["result_links"] = o.metrics.result_links;
  j["common_links"] = o.metrics.common_links;
  j["link_delta"] = static_cast<long long>(o.metrics.result_links) -
                    static_cast<long long>(o.metrics.baseline_links);
  j["additional_links_normalized"] = o.metrics.additional_links_normalized;
  j["common_link_ratio"] = o.metrics.common_link_ratio;
  j["relative_norm"] = o.metrics.relative_norm;
  j["removed_links"] = o.trace.removed_links.size();
  j["alpha"] = o.trace.alpha;
  return j;
}

nlohmann::json analyze(const WeightedGraph& g, NodeId source, NodeId destination) {
  if (source >= g.node_count() || destination >= g.node_count())
    throw Error(ErrorCode::IndexOutOfRange, "terminal outside graph");
  if (source == destination) throw Error(ErrorCode::SameTerminal, "source equals destination");
  const auto bundle = laplacian_bundle(g);
  bundle.require_connected();
  const auto sol = solve_unit_flow(bundle, g, source, destination);
  const auto power = power_dissipation(sol, g);
  const auto fs = extract_flow_subgraph(sol, g);
  const auto cand = candidate_links(fs, g);
  const auto backbone = decompose_backbone(g);
  const auto omega = effective_resistance(bundle);

  nlohmann::json j;
  j["nodes"] = g.node_count();
  j["links"] = g.link_count();
  j["source"] = source;
  j["destination"] = destination;
  j["omega"] = omega(source, destination);
  j["power_per_link"] = power.per_link_sum;
  j["power_via_resistance"] = power.via_resistance;
  j["flow_subgraph_nodes"] = fs.nodes.size();
  j["flow_subgraph_links"] = fs.links.size();
  j["candidate_links"] = cand.links.size();
  j["backbone_size"] = backbone.backbone_nodes.size();
  return j;
}

}  // namespace flownet
