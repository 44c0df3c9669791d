#pragma once

#include <cstdint>
#include <vector>

#include "flownet/degree_model.hpp"
#include "flownet/flow.hpp"
#include "flownet/graph.hpp"
#include "flownet/kernels.hpp"
#include "flownet/random_ensembles.hpp"

namespace flownet {

// ---------------------------------------------------------------------------
// Analytic predictions for Erdos-Renyi ensembles.
// ---------------------------------------------------------------------------

/// Largest root in [0,1] of p = 1 - exp(-mean_degree * p), iterated from p = 1.
/// Returns 0 for mean_degree <= 1.
double solve_pb_fixed_point(double mean_degree);

/// Same root via p_b = 1 + W0(-lambda e^{-lambda}) / lambda.
double solve_pb_lambert(double mean_degree);

/// Root of the general self-consistency p_b = 1 - phi_excess(1 - p_b).
double solve_pb_general(const DegreeModel& model);

/// b = 1 - e^{-lambda p_b} (1 + lambda p_b).
double backbone_fraction(double mean_degree, double p_b);
/// b = 1 - phi(1 - p_b) - p_b phi'(1 - p_b).
double backbone_fraction(const DegreeModel& model, double p_b);

struct BackbonePrediction {
  double mean_degree = 0.0;
  double p_b = 0.0;
  double b = 0.0;
  double theta = 0.0;                   // p_b - b
  double expected_node_fraction = 0.0;  // b p_b^2
  double expected_link_fraction = 0.0;  // p_b^4
};

BackbonePrediction predict(double mean_degree);

struct BranchStatistics {
  double extinction_p = 0.0;            // p_T = phi_excess(p_T)
  double offspring_mean = 0.0;          // lambda p_T (1 - p_T)
  double offspring_mean_general = 0.0;  // (1 - p_T) phi_excess'(p_T)
  double expected_branch_size = 1.0;    // 1 / (1 - offspring_mean)
  double expected_branch_count_density = 0.0;  // theta (1 - offspring_mean)
};

BranchStatistics branch_statistics(const DegreeModel& model);

/// 1 - (p^2 + (1-p)^2)^{n-2}: identical-weight upper bound on E[rho_L].
double equipotential_link_bound(std::size_t n, double p);

// ---------------------------------------------------------------------------
// Structure of concrete graphs.
// ---------------------------------------------------------------------------

struct BackboneDecomposition {
  std::vector<NodeId> giant_component;
  std::vector<NodeId> backbone_nodes;
  std::vector<std::vector<NodeId>> branch_components;
};

/// Largest component (ties to the one holding the smallest node id), its
/// 2-core, and the components of the remainder.
BackboneDecomposition decompose_backbone(const WeightedGraph& g);

/// 2-core of the subgraph induced on `nodes` by repeated peeling of nodes with
/// fewer than two surviving neighbors. `order_seed == 0` peels in FIFO order,
/// any other value peels in a random order drawn from that seed.
std::vector<NodeId> two_core(const WeightedGraph& g, std::span<const NodeId> nodes,
                             std::uint64_t order_seed = 0);

/// Flow subgraph read off the block-cut tree: the union of the biconnected
/// blocks on the path between i and j. Equals the electrical flow subgraph
/// when link weights are generic (i.i.d. continuous); used where a dense solve
/// is too large.
FlowSubgraph structural_flow_subgraph(const WeightedGraph& g, NodeId i, NodeId j);

// ---------------------------------------------------------------------------
// Monte-Carlo measurement.
// ---------------------------------------------------------------------------

enum class FlowMethod { automatic, dense, structural };

/// Largest component solved densely under FlowMethod::automatic.
inline constexpr std::size_t kDenseComponentCap = 3000;

struct FlowFractions {
  double mean_rho_n = 0.0;
  double mean_rho_l = 0.0;
  std::size_t pairs = 0;
};

/// Average |N(G*_ij)| / N and |L(G*_ij)| / L over `pair_count` distinct
/// unordered pairs drawn uniformly. Pairs in different components carry no
/// current and score 0; pairs inside a small component score their actual
/// subgraph.
FlowFractions measure_flow_fractions(const WeightedGraph& g, std::size_t pair_count,
                                     std::uint64_t seed, FlowMethod method = FlowMethod::automatic);

struct FlowSweepResult {
  std::vector<FlowFractions> trials;  // in trial order

  double mean_rho_n() const;
  double mean_rho_l() const;
  double std_rho_n() const;
  double std_rho_l() const;
};

/// `trials` ER graphs G_p(n) with p = mean_degree / (n - 1); trial k uses
/// derive_seed(seed, k), so the result is independent of `exec`.
FlowSweepResult simulate_flow_fractions(std::size_t n, double mean_degree,
                                        const WeightModel& weights, std::size_t trials,
                                        std::size_t pairs, std::uint64_t seed,
                                        FlowMethod method = FlowMethod::automatic,
                                        Execution exec = Execution::parallel);

}  // namespace flownet
