#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "flownet/graph.hpp"
#include "flownet/kernels.hpp"
#include "flownet/laplacian.hpp"

namespace flownet {

/// Target effective resistances: symmetric, zero diagonal, positive
/// off-diagonal. Asymmetry up to 1e-12 relative is averaged away.
class DemandMatrix {
 public:
  explicit DemandMatrix(Eigen::MatrixXd d);
  /// The effective resistance matrix of a connected graph, as a demand.
  static DemandMatrix from_graph(const WeightedGraph& g);

  const Eigen::MatrixXd& matrix() const { return d_; }
  std::size_t node_count() const { return static_cast<std::size_t>(d_.rows()); }
  double operator()(NodeId i, NodeId j) const {
    return d_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Eigen::MatrixXd d_;
};

/// Min-plus (shortest path) closure: afterwards d_ij <= d_ik + d_kj for all k.
DemandMatrix repair_demand(const DemandMatrix& d);

// ---------------------------------------------------------------------------
// Exact reconstruction from Fiedler's block relation.
// ---------------------------------------------------------------------------

struct FiedlerIntermediate {
  double sigma_sq = 0.0;    // 2 sigma^2 = 1 / (u^T D^{-1} u)
  Eigen::VectorXd p_vec;    // D^{-1} u / (u^T D^{-1} u)
  Eigen::MatrixXd q_tilde;  // (1/sigma^2) p p^T - 2 D^{-1}
};

/// Throws SingularDemand when D is not invertible.
FiedlerIntermediate fiedler_intermediate(const DemandMatrix& d);

struct FiedlerResult {
  WeightedGraph graph;
  FiedlerIntermediate intermediate;
  double roundtrip_error = 0.0;  // max_ij |omega_ij - d_ij| / d_ij of `graph`
};

/// Weighted adjacency A = diag(Q u) - Q read off the reconstructed Laplacian.
/// Off-diagonal entries with |a_ij| <= tol::kRealizable * max|a| are rounding
/// noise and dropped; anything more negative throws NotRealizable, as does a
/// reconstruction whose effective resistance misses D by more than 1e-6.
FiedlerResult fiedler_reconstruct(const DemandMatrix& d);

// ---------------------------------------------------------------------------
// Resistor Gap Pruning.
// ---------------------------------------------------------------------------

/// Pseudoinverse downdate for removing `link` (present in the bundle's graph).
/// Throws BridgeRemoval when 1 - w omega_ij < tol::kBridge.
LaplacianBundle rank_one_remove(const LaplacianBundle& bundle, const Link& link,
                                Execution exec = Execution::parallel);

/// Mean over unordered pairs of d_ij / omega_ij (throws ZeroResistance).
double scale_alpha(const DemandMatrix& d, const ResistanceMatrix& omega);

struct RgpOptions {
  /// Sherman-Morrison downdates instead of a dense solve per removal.
  bool incremental = true;
  /// Dense recomputation after this many consecutive downdates.
  std::size_t refresh_interval = 50;
  Execution exec = Execution::parallel;
};

struct RgpTrace {
  std::vector<Link> removed_links;  // in removal order; weights are 1/d_ij
  std::optional<Link> restored_link;
  /// eps before the first removal, then one entry per attempted removal. The
  /// last entry is the non-improving one (+inf for a bridge).
  std::vector<double> epsilon_history;
  double alpha = 1.0;
};

struct RgpResult {
  WeightedGraph graph;
  RgpTrace trace;
};

RgpResult rgp(const DemandMatrix& d, const RgpOptions& options = {});

// ---------------------------------------------------------------------------

struct IerpMetrics {
  double additional_links_normalized = 0.0;  // 2 (L_H - L_G) / (N (N - 1))
  double common_link_ratio = 0.0;            // L_c / L_H
  double relative_norm = 0.0;  // (1/(N(N-1))) sum_{i != j} |d_ij - omega_ij| / d_ij
  std::size_t baseline_links = 0;
  std::size_t result_links = 0;
  std::size_t common_links = 0;
};

IerpMetrics evaluate(const DemandMatrix& d, const WeightedGraph& baseline,
                     const WeightedGraph& result);

}  // namespace flownet
