#include "flownet/kernels.hpp"

#include "flownet/tolerances.hpp"

#include <cmath>
#include <vector>

namespace flownet {

void resistance_from_pseudoinverse(const Eigen::MatrixXd& pinv, Eigen::MatrixXd& omega,
                                   Execution exec) {
  const Eigen::Index n = pinv.rows();
  omega.resize(n, n);
  // Column-major: walk j in the outer loop.
  if (exec == Execution::serial) {
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        omega(i, j) = (i == j) ? 0.0 : pinv(i, i) + pinv(j, j) - 2.0 * pinv(i, j);
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        omega(i, j) = (i == j) ? 0.0 : pinv(i, i) + pinv(j, j) - 2.0 * pinv(i, j);
  }
  // Symmetric by construction up to the rounding of pinv(i,j) vs pinv(j,i).
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i) omega(j, i) = omega(i, j);
}

double l1_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Execution exec) {
  const Eigen::Index n = a.cols();
  std::vector<double> partial(static_cast<std::size_t>(n), 0.0);
  auto column = [&](Eigen::Index j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) s += std::abs(a(i, j) - b(i, j));
    partial[static_cast<std::size_t>(j)] = s;
  };
  if (exec == Execution::serial) {
    for (Eigen::Index j = 0; j < n; ++j) column(j);
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j) column(j);
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

double sherman_morrison_remove(Eigen::MatrixXd& pinv, NodeId i, NodeId j, double weight,
                               Execution exec) {
  const auto a = static_cast<Eigen::Index>(i);
  const auto b = static_cast<Eigen::Index>(j);
  const double omega_ij = pinv(a, a) + pinv(b, b) - 2.0 * pinv(a, b);
  const double denom = 1.0 - weight * omega_ij;
  if (!(denom > 0.0)) return denom;

  const Eigen::VectorXd c = pinv.col(a) - pinv.col(b);
  const double scale = weight / denom;
  const Eigen::Index n = pinv.rows();
  if (exec == Execution::serial) {
    for (Eigen::Index col = 0; col < n; ++col) {
      const double f = scale * c(col);
      for (Eigen::Index row = 0; row < n; ++row) pinv(row, col) += f * c(row);
    }
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index col = 0; col < n; ++col) {
      const double f = scale * c(col);
      for (Eigen::Index row = 0; row < n; ++row) pinv(row, col) += f * c(row);
    }
  }
  return denom;
}

namespace {

double pruning_score(const Eigen::MatrixXd& demand, const Eigen::MatrixXd& omega,
                     const Eigen::MatrixXd& weights, Eigen::Index i, Eigen::Index j) {
  const double w = omega(i, j);
  return (1.0 / w - weights(i, j)) * (demand(i, j) - w);
}

// Row i scanned left to right over j > i; strict '>' keeps the first maximum.
ScoredLink best_in_row(const Eigen::MatrixXd& demand, const Eigen::MatrixXd& omega,
                       const Eigen::MatrixXd& weights,
                       const Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic>& present,
                       Eigen::Index i) {
  ScoredLink best;
  for (Eigen::Index j = i + 1; j < demand.cols(); ++j) {
    if (!present(i, j)) continue;
    const double score = pruning_score(demand, omega, weights, i, j);
    if (!best.found || score > best.score) {
      best = {static_cast<NodeId>(i), static_cast<NodeId>(j), score, true};
    }
  }
  return best;
}

}  // namespace

ScoredLink best_pruning_score(const Eigen::MatrixXd& demand, const Eigen::MatrixXd& omega,
                              const Eigen::MatrixXd& weights,
                              const Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic>& present,
                              Execution exec) {
  const Eigen::Index n = demand.rows();
  std::vector<ScoredLink> rows(static_cast<std::size_t>(n));
  if (exec == Execution::serial) {
    for (Eigen::Index i = 0; i < n; ++i)
      rows[static_cast<std::size_t>(i)] = best_in_row(demand, omega, weights, present, i);
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (Eigen::Index i = 0; i < n; ++i)
      rows[static_cast<std::size_t>(i)] = best_in_row(demand, omega, weights, present, i);
  }
  ScoredLink best;
  for (const auto& r : rows) {
    if (r.found && (!best.found || r.score > best.score)) best = r;
  }
  if (!best.found) return best;

  // Scores equal up to rounding are ties; the first such pair wins.
  const double floor = best.score - tol::kScoreTieRel * std::abs(best.score);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    if (!r.found || r.score < floor) continue;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (!present(i, j)) continue;
      const double score = pruning_score(demand, omega, weights, i, j);
      if (score >= floor) return {static_cast<NodeId>(i), static_cast<NodeId>(j), score, true};
    }
  }
  return best;
}

}  // namespace flownet
