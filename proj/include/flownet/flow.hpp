#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "flownet/graph.hpp"
#include "flownet/laplacian.hpp"

namespace flownet {

/// Unit current injected at `source` and extracted at `destination`.
/// `currents[l]` is signed in the i -> j direction of link l (i < j).
struct FlowSolution {
  NodeId source = 0;
  NodeId destination = 0;
  Eigen::VectorXd potentials;
  std::vector<double> currents;

  double max_abs_current() const;
};

FlowSolution solve_unit_flow(const LaplacianBundle& bundle, const WeightedGraph& g, NodeId i,
                             NodeId j);
FlowSolution solve_unit_flow(const LaplacianSolver& solver, const WeightedGraph& g, NodeId i,
                             NodeId j);

struct PowerDissipation {
  double per_link_sum = 0.0;    // sum_l y_l^2 r_l
  double via_resistance = 0.0;  // I^2 omega_ij with I = 1, i.e. v_i - v_j
};

PowerDissipation power_dissipation(const FlowSolution& sol, const WeightedGraph& g);

/// Nodes and links carrying nonzero current for one terminal pair.
/// Both vectors are sorted ascending.
struct FlowSubgraph {
  NodeId source = 0;
  NodeId destination = 0;
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;
};

/// Default threshold is tol::kZeroCurrentRel * max |y_l|.
FlowSubgraph extract_flow_subgraph(const FlowSolution& sol, const WeightedGraph& g,
                                   std::optional<double> tol = std::nullopt);

/// Links of g with both endpoints in the flow subgraph's node set.
struct CandidateLinkSet {
  std::vector<LinkId> links;
};

CandidateLinkSet candidate_links(const FlowSubgraph& fs, const WeightedGraph& g);

}  // namespace flownet
