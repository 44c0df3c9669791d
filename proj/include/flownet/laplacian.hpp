#pragma once

#include <Eigen/Dense>

#include "flownet/graph.hpp"
#include "flownet/kernels.hpp"

namespace flownet {

/// Weighted Laplacian and its Moore-Penrose pseudoinverse.
///
/// `pseudoinverse` is only populated when `connected` is true; operations
/// that need it reject a disconnected bundle with ErrorCode::Disconnected.
struct LaplacianBundle {
  Eigen::MatrixXd laplacian;
  Eigen::MatrixXd pseudoinverse;
  bool connected = false;

  std::size_t node_count() const { return static_cast<std::size_t>(laplacian.rows()); }
  void require_connected() const;
};

Eigen::MatrixXd laplacian_matrix(const WeightedGraph& g);

/// Builds Q = diag(A u) - A and, for a connected graph, the pseudoinverse via
/// the deflation identity Q^+ = (Q + J/n)^{-1} - J/n.
LaplacianBundle laplacian_bundle(const WeightedGraph& g);

/// Pseudoinverse of the Laplacian of a connected graph (throws Disconnected).
Eigen::MatrixXd laplacian_pseudoinverse(const Eigen::MatrixXd& laplacian);

struct ResistanceMatrix {
  Eigen::MatrixXd omega;

  double operator()(NodeId i, NodeId j) const {
    return omega(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  std::size_t node_count() const { return static_cast<std::size_t>(omega.rows()); }
};

ResistanceMatrix effective_resistance(const LaplacianBundle& bundle,
                                      Execution exec = Execution::parallel);
/// Convenience: laplacian_bundle + effective_resistance.
ResistanceMatrix effective_resistance(const WeightedGraph& g, Execution exec = Execution::parallel);

/// Factorization of the deflated Laplacian Q + J/n of a connected graph.
/// Solves for mean-zero potentials without forming the full pseudoinverse,
/// which keeps single-pair solves at O(n^2) after one O(n^3) factorization.
class LaplacianSolver {
 public:
  explicit LaplacianSolver(const WeightedGraph& g);

  std::size_t node_count() const { return n_; }
  /// Mean-zero potentials for a unit current injected at s and extracted at t.
  Eigen::VectorXd unit_potentials(NodeId s, NodeId t) const;

 private:
  std::size_t n_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

}  // namespace flownet
