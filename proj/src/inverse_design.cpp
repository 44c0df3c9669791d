#include "flownet/inverse_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flownet/tolerances.hpp"

namespace flownet {

namespace {

using Mask = Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kRoundtripTol = 1e-6;

}  // namespace

DemandMatrix::DemandMatrix(Eigen::MatrixXd d) : d_(std::move(d)) {
  const Eigen::Index n = d_.rows();
  if (n != d_.cols()) throw Error(ErrorCode::InvalidArgument, "demand matrix must be square");
  if (n < 1) throw Error(ErrorCode::DegenerateDemand, "empty demand matrix");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d_(i, i) != 0.0) throw Error(ErrorCode::InvalidArgument, "demand diagonal must be zero");
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = d_(i, j);
      const double b = d_(j, i);
      if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw Error(ErrorCode::InvalidArgument, "demand off-diagonal must be positive");
      if (std::abs(a - b) > 1e-12 * std::max(a, b))
        throw Error(ErrorCode::InvalidArgument, "demand matrix must be symmetric");
      d_(i, j) = d_(j, i) = 0.5 * (a + b);
    }
  }
}

DemandMatrix DemandMatrix::from_graph(const WeightedGraph& g) {
  return DemandMatrix(effective_resistance(g).omega);
}

DemandMatrix repair_demand(const DemandMatrix& d) {
  Eigen::MatrixXd m = d.matrix();
  const Eigen::Index n = m.rows();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j && m(i, k) + m(k, j) < m(i, j)) m(i, j) = m(i, k) + m(k, j);
  return DemandMatrix(std::move(m));
}

FiedlerIntermediate fiedler_intermediate(const DemandMatrix& d) {
  const Eigen::Index n = static_cast<Eigen::Index>(d.node_count());
  if (n < 2) throw Error(ErrorCode::DegenerateDemand, "need at least two nodes");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(d.matrix());
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularDemand, "demand matrix is singular");

  const Eigen::MatrixXd inv = lu.inverse();
  const Eigen::VectorXd y = inv * Eigen::VectorXd::Ones(n);
  const double s = y.sum();
  if (!(std::abs(s) > 0.0) || !std::isfinite(s))
    throw Error(ErrorCode::SingularDemand, "u^T D^{-1} u vanishes");

  FiedlerIntermediate f;
  f.sigma_sq = 0.5 / s;
  f.p_vec = y / s;
  f.q_tilde = (f.p_vec * f.p_vec.transpose()) / f.sigma_sq - 2.0 * inv;
  f.q_tilde = 0.5 * (f.q_tilde + f.q_tilde.transpose()).eval();
  return f;
}

FiedlerResult fiedler_reconstruct(const DemandMatrix& d) {
  auto inter = fiedler_intermediate(d);
  const Eigen::Index n = inter.q_tilde.rows();

  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) scale = std::max(scale, std::abs(inter.q_tilde(i, j)));
  const double noise = tol::kRealizable * scale;

  std::vector<Link> links;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = -inter.q_tilde(i, j);
      if (a < -noise)
        throw Error(ErrorCode::NotRealizable,
                    "negative weight " + std::to_string(a) + " at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
      if (a > noise) links.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), a});
    }
  }
  WeightedGraph g(static_cast<std::size_t>(n), std::move(links));
  if (!is_connected(g))
    throw Error(ErrorCode::NotRealizable, "reconstruction is disconnected");

  const auto omega = effective_resistance(g);
  double err = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      err = std::max(err, std::abs(omega.omega(i, j) - d.matrix()(i, j)) / d.matrix()(i, j));
  if (err > kRoundtripTol)
    throw Error(ErrorCode::NotRealizable,
                "reconstruction misses the demand by " + std::to_string(err));
  return {std::move(g), std::move(inter), err};
}

LaplacianBundle rank_one_remove(const LaplacianBundle& bundle, const Link& link, Execution exec) {
  bundle.require_connected();
  const auto a = static_cast<Eigen::Index>(link.i);
  const auto b = static_cast<Eigen::Index>(link.j);
  if (a >= bundle.laplacian.rows() || b >= bundle.laplacian.rows() || a == b)
    throw Error(ErrorCode::IndexOutOfRange, "link outside graph");
  if (!(std::abs(bundle.laplacian(a, b) + link.weight) <= 1e-12 * link.weight))
    throw Error(ErrorCode::InvalidArgument, "link is not present with this weight");

  const auto& p = bundle.pseudoinverse;
  const double omega_ij = p(a, a) + p(b, b) - 2.0 * p(a, b);
  if (1.0 - link.weight * omega_ij < tol::kBridge)
    throw Error(ErrorCode::BridgeRemoval, "removing the link disconnects the graph");

  LaplacianBundle out = bundle;
  sherman_morrison_remove(out.pseudoinverse, link.i, link.j, link.weight, exec);
  out.laplacian(a, b) = 0.0;
  out.laplacian(b, a) = 0.0;
  out.laplacian(a, a) -= link.weight;
  out.laplacian(b, b) -= link.weight;
  return out;
}

double scale_alpha(const DemandMatrix& d, const ResistanceMatrix& omega) {
  const std::size_t n = d.node_count();
  if (omega.node_count() != n) throw Error(ErrorCode::InvalidArgument, "size mismatch");
  if (n < 2) throw Error(ErrorCode::DegenerateDemand, "need at least two nodes");
  double sum = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (!(omega(i, j) > 0.0)) throw Error(ErrorCode::ZeroResistance, "omega_ij must be > 0");
      sum += d(i, j) / omega(i, j);
    }
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

namespace {

bool mask_connected(const Mask& present) {
  const Eigen::Index n = present.rows();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Eigen::Index> stack{0};
  seen[0] = 1;
  Eigen::Index reached = 1;
  while (!stack.empty()) {
    const Eigen::Index v = stack.back();
    stack.pop_back();
    for (Eigen::Index w = 0; w < n; ++w) {
      if (present(w, v) && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

Eigen::MatrixXd masked_pseudoinverse(const Eigen::MatrixXd& weights, const Mask& present) {
  const Eigen::Index n = weights.rows();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j && present(i, j)) {
        q(i, j) = -weights(i, j);
        q(j, j) += weights(i, j);
      }
    }
  }
  return laplacian_pseudoinverse(q);
}

}  // namespace

RgpResult rgp(const DemandMatrix& d, const RgpOptions& options) {
  const Eigen::Index n = static_cast<Eigen::Index>(d.node_count());
  if (n < 2) throw Error(ErrorCode::DegenerateDemand, "RGP needs at least two nodes");
  const Eigen::MatrixXd& demand = d.matrix();
  const Execution exec = options.exec;

  // Complete graph with w_ij = 1 / d_ij.
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
  Mask present = Mask::Constant(n, n, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    present(i, i) = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) weights(i, j) = 1.0 / demand(i, j);
  }

  Eigen::MatrixXd pinv = masked_pseudoinverse(weights, present);
  Eigen::MatrixXd omega;
  resistance_from_pseudoinverse(pinv, omega, exec);
  double eps = l1_distance(demand, omega, exec);

  RgpTrace trace;
  trace.epsilon_history.push_back(eps);
  std::size_t downdates = 0;
  Eigen::MatrixXd previous;

  while (true) {
    const double eps_prev = eps;
    const ScoredLink pick = best_pruning_score(demand, omega, weights, present, exec);
    if (!pick.found) break;
    const auto a = static_cast<Eigen::Index>(pick.i);
    const auto b = static_cast<Eigen::Index>(pick.j);
    const Link link{pick.i, pick.j, weights(a, b)};
    present(a, b) = present(b, a) = 0;

    if (!mask_connected(present)) {
      // A bridge: treat the removal as infinitely bad.
      eps = std::numeric_limits<double>::infinity();
      trace.epsilon_history.push_back(eps);
      present(a, b) = present(b, a) = 1;
      trace.restored_link = link;
      break;
    }

    previous = pinv;
    if (options.incremental && downdates < options.refresh_interval) {
      const double denom = sherman_morrison_remove(pinv, link.i, link.j, link.weight, exec);
      if (denom < tol::kBridge) {
        // Numerically a bridge although the traversal disagrees; recompute.
        pinv = masked_pseudoinverse(weights, present);
        downdates = 0;
      } else {
        ++downdates;
      }
    } else {
      pinv = masked_pseudoinverse(weights, present);
      downdates = 0;
    }
    resistance_from_pseudoinverse(pinv, omega, exec);
    eps = l1_distance(demand, omega, exec);
    trace.epsilon_history.push_back(eps);

    if (!(eps < eps_prev - tol::kImprovementRel * eps_prev)) {
      present(a, b) = present(b, a) = 1;
      pinv = std::move(previous);
      trace.restored_link = link;
      break;
    }
    trace.removed_links.push_back(link);
  }

  // Scale by the mean of d_ij / omega_ij of the restored graph, recomputed
  // from scratch so the scaling does not inherit downdate drift.
  pinv = masked_pseudoinverse(weights, present);
  ResistanceMatrix restored;
  resistance_from_pseudoinverse(pinv, restored.omega, exec);
  trace.alpha = scale_alpha(d, restored);

  std::vector<Link> links;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (present(i, j))
        links.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), weights(i, j) / trace.alpha});
  return {WeightedGraph(static_cast<std::size_t>(n), std::move(links)), std::move(trace)};
}

IerpMetrics evaluate(const DemandMatrix& d, const WeightedGraph& baseline,
                     const WeightedGraph& result) {
  const std::size_t n = d.node_count();
  if (baseline.node_count() != n || result.node_count() != n)
    throw Error(ErrorCode::InvalidArgument, "node counts differ");
  if (n < 2) throw Error(ErrorCode::DegenerateDemand, "need at least two nodes");

  IerpMetrics m;
  m.baseline_links = baseline.link_count();
  m.result_links = result.link_count();
  for (const auto& l : result.links())
    if (baseline.find_link(l.i, l.j)) ++m.common_links;

  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  m.additional_links_normalized =
      2.0 * (static_cast<double>(m.result_links) - static_cast<double>(m.baseline_links)) / pairs;
  m.common_link_ratio = m.result_links == 0 ? 0.0
                                            : static_cast<double>(m.common_links) /
                                                  static_cast<double>(m.result_links);

  const auto omega = effective_resistance(result);  // throws Disconnected
  double sum = 0.0;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) sum += 2.0 * std::abs(d(i, j) - omega(i, j)) / d(i, j);
  m.relative_norm = sum / pairs;
  return m;
}

}  // namespace flownet
