#include "flownet/laplacian.hpp"

namespace flownet {

void LaplacianBundle::require_connected() const {
  if (!connected) throw Error(ErrorCode::Disconnected, "graph is not connected");
}

Eigen::MatrixXd laplacian_matrix(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (const auto& l : g.links()) {
    const auto a = static_cast<Eigen::Index>(l.i);
    const auto b = static_cast<Eigen::Index>(l.j);
    q(a, b) -= l.weight;
    q(b, a) -= l.weight;
    q(a, a) += l.weight;
    q(b, b) += l.weight;
  }
  return q;
}

namespace {

Eigen::LLT<Eigen::MatrixXd> factor_deflated(const Eigen::MatrixXd& laplacian) {
  const Eigen::Index n = laplacian.rows();
  Eigen::MatrixXd shifted = laplacian;
  shifted.array() += 1.0 / static_cast<double>(n);
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::Disconnected, "deflated Laplacian is not positive definite");
  return llt;
}

}  // namespace

Eigen::MatrixXd laplacian_pseudoinverse(const Eigen::MatrixXd& laplacian) {
  const Eigen::Index n = laplacian.rows();
  const auto llt = factor_deflated(laplacian);
  Eigen::MatrixXd pinv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  pinv.array() -= 1.0 / static_cast<double>(n);
  // Symmetrize away the solve's rounding asymmetry.
  return 0.5 * (pinv + pinv.transpose());
}

LaplacianBundle laplacian_bundle(const WeightedGraph& g) {
  LaplacianBundle b;
  b.laplacian = laplacian_matrix(g);
  b.connected = is_connected(g);
  if (b.connected) b.pseudoinverse = laplacian_pseudoinverse(b.laplacian);
  return b;
}

ResistanceMatrix effective_resistance(const LaplacianBundle& bundle, Execution exec) {
  bundle.require_connected();
  ResistanceMatrix r;
  resistance_from_pseudoinverse(bundle.pseudoinverse, r.omega, exec);
  return r;
}

ResistanceMatrix effective_resistance(const WeightedGraph& g, Execution exec) {
  return effective_resistance(laplacian_bundle(g), exec);
}

LaplacianSolver::LaplacianSolver(const WeightedGraph& g) : n_(g.node_count()) {
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "graph is not connected");
  llt_ = factor_deflated(laplacian_matrix(g));
}

Eigen::VectorXd LaplacianSolver::unit_potentials(NodeId s, NodeId t) const {
  if (s >= n_ || t >= n_) throw Error(ErrorCode::IndexOutOfRange, "terminal");
  if (s == t) throw Error(ErrorCode::SameTerminal, "source equals destination");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
  x(static_cast<Eigen::Index>(s)) = 1.0;
  x(static_cast<Eigen::Index>(t)) = -1.0;
  // x is orthogonal to u, so (Q + J/n)^{-1} x is already the mean-zero solution.
  Eigen::VectorXd v = llt_.solve(x);
  v.array() -= v.mean();
  return v;
}

}  // namespace flownet
