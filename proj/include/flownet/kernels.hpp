#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "flownet/graph.hpp"

// Dense O(n^2) kernels shared by the resistance, flow and pruning code.
//
// Every kernel has a serial reference body and an OpenMP body selected by
// `Execution`. Reductions go through per-row partials summed in row order, so
// both variants return bit-identical results regardless of thread count.

namespace flownet {

enum class Execution { serial, parallel };

/// omega(i,j) = P(i,i) + P(j,j) - 2 P(i,j).
void resistance_from_pseudoinverse(const Eigen::MatrixXd& pinv, Eigen::MatrixXd& omega,
                                   Execution exec = Execution::parallel);

/// Sum over all ordered entries of |a - b|.
double l1_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                   Execution exec = Execution::parallel);

/// Sherman-Morrison downdate of a Laplacian pseudoinverse for removing a link
/// of conductance `weight` between i and j:
///   P += weight / (1 - weight * omega_ij) * c c^T,  c = P e_i - P e_j.
/// Returns the denominator 1 - weight * omega_ij; the matrix is left untouched
/// when it is not positive (bridge removal).
double sherman_morrison_remove(Eigen::MatrixXd& pinv, NodeId i, NodeId j, double weight,
                               Execution exec = Execution::parallel);

/// Highest RGP score among present links:
///   score(i,j) = (1/omega_ij - w_ij) * (d_ij - omega_ij)
/// scanned over i < j with present(i,j) != 0. Scores within
/// tol::kScoreTieRel of the maximum are ties and go to the lowest (i,j) in
/// lexicographic order.
struct ScoredLink {
  NodeId i = 0;
  NodeId j = 0;
  double score = 0.0;
  bool found = false;
};
ScoredLink best_pruning_score(const Eigen::MatrixXd& demand, const Eigen::MatrixXd& omega,
                              const Eigen::MatrixXd& weights,
                              const Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic>& present,
                              Execution exec = Execution::parallel);

}  // namespace flownet
