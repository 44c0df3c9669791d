#pragma once

// Independent reference computations used by the tests. Nothing here calls the
// library's Laplacian, pseudoinverse or flow code.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "flownet/graph.hpp"

namespace oracle {

/// Potentials for a unit current i -> j, grounding node j and solving the
/// reduced Kirchhoff system with a full-pivot LU. Shifted to mean zero.
inline Eigen::VectorXd grounded_potentials(const flownet::WeightedGraph& g, std::size_t i,
                                           std::size_t j) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (const auto& l : g.links()) {
    const auto a = static_cast<Eigen::Index>(l.i);
    const auto b = static_cast<Eigen::Index>(l.j);
    k(a, a) += l.weight;
    k(b, b) += l.weight;
    k(a, b) -= l.weight;
    k(b, a) -= l.weight;
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index v = 0; v < n; ++v)
    if (v != static_cast<Eigen::Index>(j)) keep.push_back(v);
  const auto m = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd r(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) r(a, b) = k(keep[a], keep[b]);
    if (keep[a] == static_cast<Eigen::Index>(i)) rhs(a) = 1.0;
  }
  const Eigen::VectorXd x = r.fullPivLu().solve(rhs);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (Eigen::Index a = 0; a < m; ++a) v(keep[a]) = x(a);
  v.array() -= v.mean();
  return v;
}

inline double pair_resistance(const flownet::WeightedGraph& g, std::size_t i, std::size_t j) {
  const auto v = grounded_potentials(g, i, j);
  return v(static_cast<Eigen::Index>(i)) - v(static_cast<Eigen::Index>(j));
}

inline Eigen::MatrixXd resistance_matrix(const flownet::WeightedGraph& g) {
  const auto n = g.node_count();
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      omega(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          omega(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
              pair_resistance(g, i, j);
  return omega;
}

/// Root of f on [lo, hi] by bisection (f(lo), f(hi) of opposite sign).
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Nontrivial root of p = 1 - exp(-lambda p), or 0 when lambda <= 1.
inline double pb(double lambda) {
  if (lambda <= 1.0) return 0.0;
  return bisect([lambda](double p) { return p - 1.0 + std::exp(-lambda * p); }, 1e-9, 1.0);
}

/// Random connected graph: a random spanning tree plus extra links with
/// probability `extra`, weights uniform in [0.1, 10).
inline flownet::WeightedGraph random_connected(std::size_t n, double extra, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.1, 10.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<flownet::Link> links;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t parent = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    links.push_back({parent, v, w(rng)});
    used[parent][v] = used[v][parent] = true;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!used[a][b] && u(rng) < extra) links.push_back({a, b, w(rng)});
  return flownet::WeightedGraph(n, std::move(links));
}

/// Nodes on the unique tree path between s and t, by depth-first search.
inline std::vector<std::size_t> tree_path(const flownet::WeightedGraph& g, std::size_t s,
                                          std::size_t t) {
  std::vector<std::size_t> parent(g.node_count(), g.node_count());
  std::vector<std::size_t> stack{s};
  parent[s] = s;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& a : g.neighbors(v))
      if (parent[a.node] == g.node_count()) {
        parent[a.node] = v;
        stack.push_back(a.node);
      }
  }
  std::vector<std::size_t> path{t};
  while (path.back() != s) path.push_back(parent[path.back()]);
  return path;
}

}  // namespace oracle
