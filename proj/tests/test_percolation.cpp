#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "flownet/lambert_w.hpp"
#include "flownet/percolation.hpp"
#include "oracles.hpp"

using namespace flownet;

namespace {

WeightedGraph cycle(std::size_t n) {
  std::vector<Link> links;
  for (NodeId v = 0; v < n; ++v) links.push_back({v, (v + 1) % n, 1.0});
  return WeightedGraph(n, std::move(links));
}

WeightedGraph complete(std::size_t n) {
  std::vector<Link> links;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) links.push_back({i, j, 1.0});
  return WeightedGraph(n, std::move(links));
}

// Reference 2-core: repeatedly delete any node with fewer than two neighbors,
// scanning in index order until nothing changes.
std::vector<NodeId> naive_two_core(const WeightedGraph& g, const std::vector<NodeId>& nodes) {
  std::set<NodeId> alive(nodes.begin(), nodes.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = alive.begin(); it != alive.end();) {
      std::size_t d = 0;
      for (const auto& a : g.neighbors(*it)) d += alive.count(a.node);
      if (d < 2) {
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return {alive.begin(), alive.end()};
}

}  // namespace

TEST_CASE("Lambert W0") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambert_w0(-std::exp(-1.0)) == doctest::Approx(-1.0).epsilon(1e-7));
  for (double x : {-0.35, -0.2, -0.01, 0.3, 1.0, 5.0, 100.0, 1e6}) {
    const double w = lambert_w0(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-13 * std::max(1.0, std::abs(x)));
    CHECK(w >= -1.0);
  }
  CHECK_THROWS_AS(lambert_w0(-0.5), Error);
}

TEST_CASE("p_b examples") {
  CHECK(solve_pb_fixed_point(1.0) == 0.0);
  CHECK(solve_pb_fixed_point(0.5) == 0.0);
  CHECK(solve_pb_fixed_point(2.0) == doctest::Approx(oracle::pb(2.0)).epsilon(1e-10));
  CHECK(std::abs(solve_pb_fixed_point(2.0) - 0.79681) < 1e-4);
  CHECK(std::abs(solve_pb_fixed_point(5.0) - 0.99302) < 1e-4);
  CHECK(std::abs(solve_pb_lambert(2.0) - oracle::pb(2.0)) < 1e-6);
}

TEST_CASE("fixed point and Lambert W agree") {
  for (double lam : {1.1, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0})
    CHECK(std::abs(solve_pb_fixed_point(lam) - solve_pb_lambert(lam)) < 1e-10);
  for (double lam = 1.001; lam <= 50.0; lam *= 1.1)
    CHECK(std::abs(solve_pb_fixed_point(lam) - oracle::pb(lam)) < 1e-10);
}

TEST_CASE("general self-consistency reduces to the Poisson case") {
  for (double lam : {1.5, 2.0, 5.0})
    CHECK(solve_pb_general(DegreeModel::er_poisson(lam)) ==
          doctest::Approx(solve_pb_fixed_point(lam)).epsilon(1e-10));
  // Large sparse binomial approaches the Poisson limit.
  const auto bin = DegreeModel::er_binomial(100000, 3.0 / 99999.0);
  CHECK(std::abs(solve_pb_general(bin) - solve_pb_fixed_point(3.0)) < 1e-4);
}

TEST_CASE("backbone fraction examples") {
  CHECK(std::abs(backbone_fraction(2.0, 0.79681) - 0.47300) < 1e-4);
  CHECK(backbone_fraction(0.5, 0.0) == 0.0);
  CHECK(std::abs(backbone_fraction(5.0, 0.99302) - 0.95836) < 1e-4);
  const double pb = solve_pb_fixed_point(3.0);
  CHECK(backbone_fraction(DegreeModel::er_poisson(3.0), pb) ==
        doctest::Approx(backbone_fraction(3.0, pb)).epsilon(1e-12));
}

TEST_CASE("expected fraction examples") {
  const auto p2 = predict(2.0);
  CHECK(std::abs(p2.expected_node_fraction - 0.30031) < 3e-4);
  CHECK(std::abs(p2.expected_link_fraction - 0.40306) < 3e-4);
  CHECK(p2.theta == doctest::Approx(p2.p_b - p2.b));
  const auto p1 = predict(1.0);
  CHECK(p1.p_b == 0.0);
  CHECK(p1.b == 0.0);
  CHECK(p1.theta == 0.0);
  CHECK(p1.expected_node_fraction == 0.0);
  CHECK(p1.expected_link_fraction == 0.0);
  const auto p5 = predict(5.0);
  CHECK(std::abs(p5.expected_node_fraction - 0.94503) < 3e-4);
  CHECK(std::abs(p5.expected_link_fraction - 0.97236) < 3e-4);
}

TEST_CASE("p_b and b are nondecreasing in the mean degree") {
  double last_p = 0.0;
  double last_b = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto pr = predict(10.0 * k / 99.0);
    CHECK(pr.p_b >= last_p);
    CHECK(pr.b >= last_b);
    last_p = pr.p_b;
    last_b = pr.b;
  }
}

TEST_CASE("branch statistics") {
  const auto s = branch_statistics(DegreeModel::er_poisson(2.0));
  CHECK(std::abs(s.extinction_p - 0.20319) < 1e-4);
  CHECK(s.extinction_p == doctest::Approx(1.0 - solve_pb_fixed_point(2.0)).epsilon(1e-10));
  CHECK(std::abs(s.offspring_mean - 0.32380) < 3e-4);
  CHECK(std::abs(s.expected_branch_size - 1.4788) < 1e-3);
  for (double lam : {1.2, 2.0, 4.0, 8.0}) {
    const auto b = branch_statistics(DegreeModel::er_poisson(lam));
    CHECK(b.extinction_p >= 0.0);
    CHECK(b.extinction_p <= 1.0);
    CHECK(b.offspring_mean >= 0.0);
    CHECK(b.offspring_mean < 1.0);
    CHECK(b.expected_branch_size >= 1.0);
  }
}

TEST_CASE("equipotential bound examples") {
  CHECK(equipotential_link_bound(10, 0.5) == doctest::Approx(1.0 - std::pow(0.5, 8)).epsilon(1e-12));
  CHECK(equipotential_link_bound(10, 0.5) == doctest::Approx(0.996094).epsilon(1e-6));
  CHECK(equipotential_link_bound(50, 0.0) == 0.0);
  CHECK(equipotential_link_bound(50, 1.0) == 0.0);
}

TEST_CASE("backbone decomposition examples") {
  const auto c5 = decompose_backbone(cycle(5));
  CHECK(c5.backbone_nodes.size() == 5);
  CHECK(c5.branch_components.empty());

  const WeightedGraph star(5, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}});
  const auto st = decompose_backbone(star);
  CHECK(st.backbone_nodes.empty());
  CHECK(st.giant_component.size() == 5);

  const WeightedGraph tail(5, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
  const auto tl = decompose_backbone(tail);
  CHECK(tl.backbone_nodes == std::vector<NodeId>{0, 1, 2});
  REQUIRE(tl.branch_components.size() == 1);
  CHECK(tl.branch_components[0].size() == 2);
}

TEST_CASE("2-core peeling is order independent") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = sample_er({120, ErModel{0.02}, WeightModel::identical(), s});
    std::vector<NodeId> all(120);
    for (NodeId v = 0; v < 120; ++v) all[v] = v;
    const auto ref = naive_two_core(g, all);
    CHECK(two_core(g, all) == ref);
    for (std::uint64_t order = 1; order <= 3; ++order) CHECK(two_core(g, all, order) == ref);
  }
}

TEST_CASE("structural flow subgraph equals the electrical one for continuous weights") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = sample_er({60, ErModel{0.05}, WeightModel::uniform01(), s});
    const auto comps = connected_components(g);
    std::vector<NodeId> gc;
    std::size_t best = 0;
    for (std::size_t c = 0; c < comps.count(); ++c)
      if (comps.sizes[c] > comps.sizes[best]) best = c;
    for (NodeId v = 0; v < 60; ++v)
      if (comps.label[v] == best) gc.push_back(v);
    if (gc.size() < 3) continue;
    const auto sub = induced_subgraph(g, gc);
    const auto b = laplacian_bundle(sub.graph);
    for (NodeId k = 0; k + 1 < sub.graph.node_count(); k += 3) {
      const auto dense = extract_flow_subgraph(solve_unit_flow(b, sub.graph, k, k + 1), sub.graph);
      const auto structural = structural_flow_subgraph(sub.graph, k, k + 1);
      CHECK(structural.nodes == dense.nodes);
      CHECK(structural.links == dense.links);
    }
  }
}

TEST_CASE("flow-subgraph nodes lie in the backbone or on the terminal branch paths") {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const auto g = sample_er({80, ErModel{3.0 / 79}, WeightModel::uniform01(), s});
    const auto dec = decompose_backbone(g);
    if (dec.giant_component.size() < 10) continue;
    const std::set<NodeId> backbone(dec.backbone_nodes.begin(), dec.backbone_nodes.end());
    const auto sub = induced_subgraph(g, dec.giant_component);
    const auto b = laplacian_bundle(sub.graph);
    const NodeId i = 0;
    const NodeId j = sub.graph.node_count() - 1;
    const auto fs = extract_flow_subgraph(solve_unit_flow(b, sub.graph, i, j), sub.graph);
    // A non-backbone node carrying current must lie on the tree path from a
    // terminal to the backbone, i.e. on the shortest path from i or j.
    for (NodeId local : fs.nodes) {
      const NodeId v = sub.original[local];
      if (backbone.count(v)) continue;
      bool on_terminal_path = false;
      for (NodeId t : {i, j}) {
        // Walk toward the backbone from t by BFS parents.
        std::vector<NodeId> parent(sub.graph.node_count(), sub.graph.node_count());
        std::vector<NodeId> queue{t};
        parent[t] = t;
        NodeId hit = sub.graph.node_count();
        for (std::size_t q = 0; q < queue.size() && hit == sub.graph.node_count(); ++q) {
          const NodeId u = queue[q];
          if (backbone.count(sub.original[u])) {
            hit = u;
            break;
          }
          for (const auto& a : sub.graph.neighbors(u))
            if (parent[a.node] == sub.graph.node_count()) {
              parent[a.node] = u;
              queue.push_back(a.node);
            }
        }
        if (hit == sub.graph.node_count()) continue;
        for (NodeId u = hit;; u = parent[u]) {
          if (u == local) on_terminal_path = true;
          if (u == t) break;
        }
      }
      // Pairs inside one tree-like region use the direct path instead.
      if (!on_terminal_path) {
        auto path = oracle::tree_path(sub.graph, i, j);
        on_terminal_path = std::find(path.begin(), path.end(), local) != path.end();
      }
      CHECK(on_terminal_path);
    }
  }
}

TEST_CASE("flow fraction measurement examples") {
  const auto tree = sample_tree({10, TreeModel{}, WeightModel::identical(), 3});
  const auto fr = measure_flow_fractions(tree, 45, 1);
  // All 45 pairs of a 10-node tree: mean path node count over 10.
  double total = 0.0;
  for (NodeId i = 0; i < 10; ++i)
    for (NodeId j = i + 1; j < 10; ++j) total += static_cast<double>(oracle::tree_path(tree, i, j).size());
  CHECK(fr.pairs == 45);
  CHECK(fr.mean_rho_n == doctest::Approx(total / 45 / 10).epsilon(1e-12));

  const auto k6 = measure_flow_fractions(complete(6), 10, 2);
  CHECK(k6.mean_rho_l == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(k6.mean_rho_n == doctest::Approx(1.0).epsilon(1e-12));

  const auto c4 = measure_flow_fractions(cycle(4), 6, 5);
  CHECK(c4.mean_rho_n == doctest::Approx(1.0));
}

TEST_CASE("empirical backbone size and theta follow the prediction") {
  for (double lam : {2.0, 3.0, 5.0}) {
    const auto pr = predict(lam);
    double b_sum = 0.0;
    double theta_sum = 0.0;
    const int graphs = 30;
    for (int s = 0; s < graphs; ++s) {
      const auto g = sample_er({2000, ErModel{lam / 1999.0}, WeightModel::identical(),
                                derive_seed(static_cast<std::uint64_t>(lam * 10), s)});
      const auto dec = decompose_backbone(g);
      b_sum += static_cast<double>(dec.backbone_nodes.size()) / 2000.0;
      theta_sum += static_cast<double>(dec.giant_component.size() - dec.backbone_nodes.size()) / 2000.0;
    }
    CHECK(std::abs(b_sum / graphs - pr.b) < 0.02);
    CHECK(std::abs(theta_sum / graphs - pr.theta) < 0.02);
  }
}

TEST_CASE("sweeps are identical in serial and parallel") {
  const auto s = simulate_flow_fractions(100, 3.0, WeightModel::uniform01(), 6, 5, 42,
                                         FlowMethod::automatic, Execution::serial);
  const auto p = simulate_flow_fractions(100, 3.0, WeightModel::uniform01(), 6, 5, 42,
                                         FlowMethod::automatic, Execution::parallel);
  REQUIRE(s.trials.size() == p.trials.size());
  for (std::size_t k = 0; k < s.trials.size(); ++k) {
    CHECK(s.trials[k].mean_rho_n == p.trials[k].mean_rho_n);
    CHECK(s.trials[k].mean_rho_l == p.trials[k].mean_rho_l);
  }
}

TEST_CASE("subcritical graphs carry negligible flow") {
  const auto r = simulate_flow_fractions(500, 0.5, WeightModel::identical(), 10, 20, 8);
  CHECK(r.mean_rho_n() < 0.02);
}
