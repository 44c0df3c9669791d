// flownet: resistor-network experiments from the command line.
//
//   flownet flow-stats --degrees 2,3,5 --n 1000 --weights uniform --seed 1 --out flow.csv
//   flownet rgp-eval   --baseline tree --n 10,20,30 --seed 1 --out rgp.csv
//   flownet sparsify   karate.txt --out sparse.txt
//   flownet analyze    graph.txt 0 5
//
// Exit codes: 0 ok, 2 configuration error, 3 I/O or parse error,
// 4 disconnected input.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "flownet/edge_list.hpp"
#include "flownet/experiments.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kIoError = 3;
constexpr int kDisconnected = 4;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::size_t> trials;
};

int exit_code_for(const flownet::Error& e) {
  switch (e.code()) {
    case flownet::ErrorCode::Disconnected: return kDisconnected;
    case flownet::ErrorCode::Parse:
    case flownet::ErrorCode::DuplicateLink:
    case flownet::ErrorCode::SelfLoop:
    case flownet::ErrorCode::NonPositiveWeight: return kIoError;
    default: return kConfigError;
  }
}

// Runs `body` with the CSV/JSON destination: --out file or stdout.
template <typename F>
void with_output(const std::string& path, F body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  body(out);
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

std::uint64_t require_seed(const GlobalOptions& g) {
  if (!g.seed) throw flownet::Error(flownet::ErrorCode::InvalidArgument, "--seed is required");
  return *g.seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resistor-network flows, flow-subgraph statistics and inverse design"};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--seed", global.seed, "Random seed (u64)")->option_text("U64");
  app.add_option("--out", global.out, "Output path (default stdout)");
  app.add_option("--trials", global.trials, "Trials per grid point");
  app.fallthrough();

  // flow-stats
  auto* flow = app.add_subcommand("flow-stats", "Flow-subgraph size in ER graphs vs prediction");
  std::vector<std::size_t> flow_n{50, 200, 1000};
  std::vector<double> degrees;
  std::string flow_weights = "identical";
  std::size_t pairs = 20;
  bool large = false;
  std::string flow_method = "auto";
  flow->add_option("--n", flow_n, "Node counts")->delimiter(',');
  flow->add_option("--degrees", degrees, "Mean degrees E[D]")->delimiter(',');
  flow->add_option("--weights", flow_weights,
                   "identical[:w] | uniform | exponential:<mean> | int:<lo>:<hi>");
  flow->add_option("--pairs", pairs, "Terminal pairs per graph");
  flow->add_flag("--large", large, "Allow n > 3000 (structural flow subgraphs; slow)");
  flow->add_option("--method", flow_method, "auto | dense | structural");

  // rgp-eval
  auto* eval = app.add_subcommand("rgp-eval", "RGP and Fiedler reconstruction on random demands");
  std::string baseline = "tree";
  std::vector<std::size_t> eval_n{10, 20, 30};
  std::vector<double> p_list{0.5};
  std::optional<std::string> eval_weights;
  std::vector<std::string> methods{"rgp", "fiedler"};
  bool no_timing = false;
  eval->add_option("--baseline", baseline, "tree | er");
  eval->add_option("--n", eval_n, "Node counts")->delimiter(',');
  eval->add_option("--p", p_list, "ER link densities")->delimiter(',');
  eval->add_option("--weights", eval_weights, "Weight model (default int:1:10 for trees, uniform for er)");
  eval->add_option("--methods", methods, "rgp,fiedler")->delimiter(',');
  eval->add_flag("--no-timing", no_timing, "Write runtime_ms as 0 for reproducible output");

  // sparsify
  auto* sparse = app.add_subcommand("sparsify", "RGP sparsification of an edge list");
  std::string sparse_input;
  std::string metrics_path;
  sparse->add_option("input", sparse_input, "Edge list")->required();
  sparse->add_option("--metrics", metrics_path, "Metrics JSON path (default <out>.json, or stderr when writing to stdout)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Flow quantities for one terminal pair");
  std::string analyze_input;
  long long source = -1;
  long long dest = -1;
  analyze->add_option("input", analyze_input, "Edge list")->required();
  analyze->add_option("source", source, "Source node")->required();
  analyze->add_option("destination", dest, "Destination node")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*flow) {
      flownet::FlowStatsConfig cfg;
      cfg.n_list = flow_n;
      cfg.degree_list = degrees;
      cfg.weights = flownet::WeightModel::parse(flow_weights);
      cfg.pairs = pairs;
      cfg.allow_large = large;
      if (flow_method == "dense") cfg.method = flownet::FlowMethod::dense;
      else if (flow_method == "structural") cfg.method = flownet::FlowMethod::structural;
      else if (flow_method != "auto")
        throw flownet::Error(flownet::ErrorCode::InvalidArgument, "unknown method " + flow_method);
      if (global.trials) cfg.trials = *global.trials;
      cfg.seed = require_seed(global);
      for (std::size_t n : cfg.n_list)
        if (n > flownet::kDeskScaleMaxN && large)
          std::cerr << "warning: n = " << n
                    << " uses structural flow subgraphs and may run for hours\n";
      with_output(global.out, [&](std::ostream& os) { flownet::run_flow_stats(cfg, os); });
    } else if (*eval) {
      flownet::RgpEvalConfig cfg;
      cfg.baseline = baseline;
      cfg.n_list = eval_n;
      cfg.p_list = p_list;
      cfg.weights = eval_weights ? flownet::WeightModel::parse(*eval_weights)
                    : baseline == "tree" ? flownet::WeightModel::integer_uniform(1, 10)
                                         : flownet::WeightModel::uniform01();
      cfg.methods = methods;
      cfg.timing = !no_timing;
      if (global.trials) cfg.trials = *global.trials;
      cfg.seed = require_seed(global);
      with_output(global.out, [&](std::ostream& os) { flownet::run_rgp_eval(cfg, os); });
    } else if (*sparse) {
      const auto input = flownet::read_edge_list(std::filesystem::path(sparse_input));
      const auto outcome = flownet::sparsify(input);
      with_output(global.out, [&](std::ostream& os) { flownet::write_edge_list(os, outcome.graph); });
      std::string mpath = metrics_path;
      if (mpath.empty() && !global.out.empty() && global.out != "-") mpath = global.out + ".json";
      const std::string record = flownet::to_json(outcome).dump(2) + "\n";
      if (mpath.empty()) {
        std::cerr << record;
      } else {
        with_output(mpath, [&](std::ostream& os) { os << record; });
      }
    } else if (*analyze) {
      const auto g = flownet::read_edge_list(std::filesystem::path(analyze_input));
      if (source < 0 || dest < 0 ||
          static_cast<std::size_t>(source) >= g.node_count() ||
          static_cast<std::size_t>(dest) >= g.node_count() || source == dest) {
        std::cerr << "error: invalid terminals\n";
        return kConfigError;
      }
      const auto record = flownet::analyze(g, static_cast<flownet::NodeId>(source),
                                           static_cast<flownet::NodeId>(dest));
      with_output(global.out, [&](std::ostream& os) { os << record.dump(2) << '\n'; });
    }
  } catch (const flownet::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
