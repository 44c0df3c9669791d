#include "flownet/flow.hpp"

#include <algorithm>
#include <cmath>

#include "flownet/tolerances.hpp"

namespace flownet {

double FlowSolution::max_abs_current() const {
  double m = 0.0;
  for (double y : currents) m = std::max(m, std::abs(y));
  return m;
}

namespace {

void check_terminals(std::size_t n, NodeId i, NodeId j) {
  if (i >= n || j >= n) throw Error(ErrorCode::IndexOutOfRange, "terminal outside graph");
  if (i == j) throw Error(ErrorCode::SameTerminal, "source equals destination");
}

FlowSolution from_potentials(Eigen::VectorXd v, const WeightedGraph& g, NodeId i, NodeId j) {
  FlowSolution sol;
  sol.source = i;
  sol.destination = j;
  sol.currents.resize(g.link_count());
  for (LinkId id = 0; id < g.link_count(); ++id) {
    const auto& l = g.link(id);
    sol.currents[id] =
        l.weight * (v(static_cast<Eigen::Index>(l.i)) - v(static_cast<Eigen::Index>(l.j)));
  }
  sol.potentials = std::move(v);
  return sol;
}

}  // namespace

FlowSolution solve_unit_flow(const LaplacianBundle& bundle, const WeightedGraph& g, NodeId i,
                             NodeId j) {
  bundle.require_connected();
  check_terminals(g.node_count(), i, j);
  const auto& p = bundle.pseudoinverse;
  Eigen::VectorXd v = p.col(static_cast<Eigen::Index>(i)) - p.col(static_cast<Eigen::Index>(j));
  return from_potentials(std::move(v), g, i, j);
}

FlowSolution solve_unit_flow(const LaplacianSolver& solver, const WeightedGraph& g, NodeId i,
                             NodeId j) {
  check_terminals(g.node_count(), i, j);
  return from_potentials(solver.unit_potentials(i, j), g, i, j);
}

PowerDissipation power_dissipation(const FlowSolution& sol, const WeightedGraph& g) {
  PowerDissipation p;
  for (LinkId id = 0; id < g.link_count(); ++id) {
    const double y = sol.currents[id];
    p.per_link_sum += y * y * g.link(id).resistance();
  }
  p.via_resistance = sol.potentials(static_cast<Eigen::Index>(sol.source)) -
                     sol.potentials(static_cast<Eigen::Index>(sol.destination));
  return p;
}

FlowSubgraph extract_flow_subgraph(const FlowSolution& sol, const WeightedGraph& g,
                                   std::optional<double> tol) {
  const double threshold = tol.value_or(tol::kZeroCurrentRel * sol.max_abs_current());
  if (!(threshold > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  FlowSubgraph fs;
  fs.source = sol.source;
  fs.destination = sol.destination;
  std::vector<char> in_set(g.node_count(), 0);
  for (LinkId id = 0; id < g.link_count(); ++id) {
    if (std::abs(sol.currents[id]) > threshold) {
      fs.links.push_back(id);
      in_set[g.link(id).i] = 1;
      in_set[g.link(id).j] = 1;
    }
  }
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (in_set[v]) fs.nodes.push_back(v);
  return fs;
}

CandidateLinkSet candidate_links(const FlowSubgraph& fs, const WeightedGraph& g) {
  std::vector<char> in_set(g.node_count(), 0);
  for (NodeId v : fs.nodes) in_set.at(v) = 1;
  CandidateLinkSet c;
  for (LinkId id = 0; id < g.link_count(); ++id) {
    const auto& l = g.link(id);
    if (in_set[l.i] && in_set[l.j]) c.links.push_back(id);
  }
  return c;
}

}  // namespace flownet
