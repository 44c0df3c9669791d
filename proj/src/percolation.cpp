#include "flownet/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <set>

#include "flownet/lambert_w.hpp"
#include "flownet/laplacian.hpp"

namespace flownet {

namespace {

constexpr double kFixedPointTol = 1e-13;
constexpr int kFixedPointCap = 10000;

// Fixed-point iteration x <- f(x) with Steffensen (Aitken delta-squared)
// acceleration. Plain iteration converges only linearly near the critical
// point lambda = 1, where the contraction factor approaches 1.
template <typename F>
double iterate_fixed_point(F f, double x0, double lo, double hi) {
  double x = x0;
  for (int it = 0; it < kFixedPointCap; ++it) {
    const double x1 = f(x);
    const double x2 = f(x1);
    const double denom = x2 - 2.0 * x1 + x;
    double next = x2;
    if (std::abs(denom) > 1e-300) {
      const double accel = x - (x1 - x) * (x1 - x) / denom;
      // Accept the extrapolation only when it stays inside the bracket
      // swept by the plain iterates.
      const double a = std::min(x, x2);
      const double b = std::max(x, x2);
      if (accel >= lo && accel <= hi && accel >= a - (b - a) && accel <= b + (b - a)) next = accel;
    }
    if (std::abs(next - x) < kFixedPointTol) {
      // Polish with one plain step so the returned value is a fixed point
      // of f itself, not of the extrapolation.
      return f(next);
    }
    x = next;
  }
  throw Error(ErrorCode::NonConvergence, "fixed-point iteration cap reached");
}

}  // namespace

double solve_pb_fixed_point(double mean_degree) {
  if (!(mean_degree >= 0.0)) throw Error(ErrorCode::InvalidArgument, "mean degree must be >= 0");
  if (mean_degree <= 1.0) return 0.0;
  const double p = iterate_fixed_point(
      [mean_degree](double x) { return -std::expm1(-mean_degree * x); }, 1.0, 0.0, 1.0);
  return p > 1e-12 ? p : 0.0;
}

double solve_pb_lambert(double mean_degree) {
  if (!(mean_degree > 0.0)) throw Error(ErrorCode::InvalidArgument, "mean degree must be > 0");
  if (mean_degree <= 1.0) return 0.0;
  const double w = lambert_w0(-mean_degree * std::exp(-mean_degree));
  return 1.0 + w / mean_degree;
}

double solve_pb_general(const DegreeModel& model) {
  if (model.mean_degree() <= 1.0) return 0.0;
  const double p = iterate_fixed_point(
      [&model](double x) { return 1.0 - model.pgf(1.0 - x).phi_excess; }, 1.0, 0.0, 1.0);
  return p > 1e-12 ? p : 0.0;
}

double backbone_fraction(double mean_degree, double p_b) {
  if (!(p_b >= 0.0 && p_b <= 1.0)) throw Error(ErrorCode::InvalidArgument, "p_b outside [0,1]");
  const double x = mean_degree * p_b;
  return 1.0 - std::exp(-x) * (1.0 + x);
}

double backbone_fraction(const DegreeModel& model, double p_b) {
  if (!(p_b >= 0.0 && p_b <= 1.0)) throw Error(ErrorCode::InvalidArgument, "p_b outside [0,1]");
  const auto v = model.pgf(1.0 - p_b);
  return 1.0 - v.phi - p_b * v.phi_prime;
}

BackbonePrediction predict(double mean_degree) {
  BackbonePrediction out;
  out.mean_degree = mean_degree;
  out.p_b = solve_pb_fixed_point(mean_degree);
  out.b = out.p_b > 0.0 ? std::max(0.0, backbone_fraction(mean_degree, out.p_b)) : 0.0;
  out.theta = out.p_b - out.b;
  out.expected_node_fraction = out.b * out.p_b * out.p_b;
  out.expected_link_fraction = std::pow(out.p_b, 4);
  return out;
}

BranchStatistics branch_statistics(const DegreeModel& model) {
  BranchStatistics s;
  const double lambda = model.mean_degree();
  if (lambda <= 1.0) {
    // No giant component: extinction is certain and no branches hang off it.
    s.extinction_p = 1.0;
    return s;
  }
  s.extinction_p = iterate_fixed_point(
      [&model](double x) { return model.pgf(x).phi_excess; }, 0.0, 0.0, 1.0);
  const double pt = s.extinction_p;
  s.offspring_mean = lambda * pt * (1.0 - pt);
  s.offspring_mean_general = (1.0 - pt) * model.pgf(pt).phi_excess_prime;
  if (!(s.offspring_mean < 1.0))
    throw Error(ErrorCode::DomainError, "branch process is not subcritical");
  s.expected_branch_size = 1.0 / (1.0 - s.offspring_mean);

  const double p_b = model.kind() == DegreeModel::Kind::er_poisson ? solve_pb_fixed_point(lambda)
                                                                   : solve_pb_general(model);
  const double b = backbone_fraction(model, p_b);
  s.expected_branch_count_density = (p_b - b) * (1.0 - s.offspring_mean);
  return s;
}

double equipotential_link_bound(std::size_t n, double p) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidProbability, "p outside [0,1]");
  const double same = p * p + (1.0 - p) * (1.0 - p);
  return -std::expm1(static_cast<double>(n - 2) * std::log(same));
}

// ---------------------------------------------------------------------------

std::vector<NodeId> two_core(const WeightedGraph& g, std::span<const NodeId> nodes,
                             std::uint64_t order_seed) {
  std::vector<char> alive(g.node_count(), 0);
  for (NodeId v : nodes) alive.at(v) = 1;
  std::vector<std::size_t> deg(g.node_count(), 0);
  for (NodeId v : nodes)
    for (const auto& a : g.neighbors(v)) deg[v] += alive[a.node];

  std::vector<NodeId> pending;
  std::vector<char> queued(g.node_count(), 0);
  for (NodeId v : nodes) {
    if (deg[v] < 2) {
      pending.push_back(v);
      queued[v] = 1;
    }
  }
  Rng rng(order_seed);
  std::size_t head = 0;
  while (head < pending.size()) {
    if (order_seed != 0) {
      std::uniform_int_distribution<std::size_t> pick(head, pending.size() - 1);
      std::swap(pending[head], pending[pick(rng)]);
    }
    const NodeId v = pending[head++];
    alive[v] = 0;
    for (const auto& a : g.neighbors(v)) {
      if (!alive[a.node]) continue;
      if (--deg[a.node] < 2 && !queued[a.node]) {
        queued[a.node] = 1;
        pending.push_back(a.node);
      }
    }
  }
  std::vector<NodeId> core;
  for (NodeId v : nodes)
    if (alive[v]) core.push_back(v);
  std::sort(core.begin(), core.end());
  return core;
}

BackboneDecomposition decompose_backbone(const WeightedGraph& g) {
  const auto comps = connected_components(g);
  std::size_t giant = 0;
  for (std::size_t c = 1; c < comps.count(); ++c)
    if (comps.sizes[c] > comps.sizes[giant]) giant = c;

  BackboneDecomposition d;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (comps.label[v] == giant) d.giant_component.push_back(v);
  d.backbone_nodes = two_core(g, d.giant_component);

  std::vector<char> rest(g.node_count(), 0);
  for (NodeId v : d.giant_component) rest[v] = 1;
  for (NodeId v : d.backbone_nodes) rest[v] = 0;
  std::vector<NodeId> stack;
  for (NodeId s : d.giant_component) {
    if (!rest[s]) continue;
    std::vector<NodeId> branch;
    rest[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      branch.push_back(v);
      for (const auto& a : g.neighbors(v)) {
        if (rest[a.node]) {
          rest[a.node] = 0;
          stack.push_back(a.node);
        }
      }
    }
    std::sort(branch.begin(), branch.end());
    d.branch_components.push_back(std::move(branch));
  }
  return d;
}

// ---------------------------------------------------------------------------

namespace {

/// Biconnected blocks of a graph (Hopcroft-Tarjan with an explicit stack).
class BlockCutIndex {
 public:
  explicit BlockCutIndex(const WeightedGraph& g) : g_(g), node_blocks_(g.node_count()) {
    constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
    const std::size_t n = g.node_count();
    std::vector<std::size_t> disc(n, kUnseen), low(n, 0);
    std::vector<LinkId> edge_stack;
    struct Frame {
      NodeId v;
      LinkId parent_link;
      std::size_t next;
    };
    std::vector<Frame> frames;
    std::size_t time = 0;

    for (NodeId root = 0; root < n; ++root) {
      if (disc[root] != kUnseen) continue;
      disc[root] = low[root] = time++;
      frames.push_back({root, std::numeric_limits<LinkId>::max(), 0});
      while (!frames.empty()) {
        Frame& f = frames.back();
        const auto adj = g.neighbors(f.v);
        if (f.next < adj.size()) {
          const Adjacent a = adj[f.next++];
          if (a.link == f.parent_link) continue;
          if (disc[a.node] == kUnseen) {
            edge_stack.push_back(a.link);
            disc[a.node] = low[a.node] = time++;
            frames.push_back({a.node, a.link, 0});
          } else if (disc[a.node] < disc[f.v]) {
            edge_stack.push_back(a.link);
            low[f.v] = std::min(low[f.v], disc[a.node]);
          }
          continue;
        }
        const Frame done = f;
        frames.pop_back();
        if (frames.empty()) break;
        const NodeId parent = frames.back().v;
        low[parent] = std::min(low[parent], low[done.v]);
        if (low[done.v] >= disc[parent]) {
          std::vector<LinkId> block;
          while (true) {
            const LinkId e = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(e);
            if (e == done.parent_link) break;
          }
          add_block(std::move(block));
        }
      }
    }
  }

  /// Blocks on the block-cut tree path between nodes i and j; empty when the
  /// nodes are disconnected.
  std::vector<std::size_t> path_blocks(NodeId i, NodeId j) const {
    const std::size_t n = g_.node_count();
    const std::size_t total = n + block_links_.size();
    constexpr auto kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> parent(total, kNone);
    std::vector<std::size_t> queue{i};
    parent[i] = i;
    for (std::size_t head = 0; head < queue.size() && parent[j] == kNone; ++head) {
      const std::size_t x = queue[head];
      auto visit = [&](std::size_t y) {
        if (parent[y] == kNone) {
          parent[y] = x;
          queue.push_back(y);
        }
      };
      if (x < n) {
        for (std::size_t b : node_blocks_[x]) visit(n + b);
      } else {
        for (NodeId v : block_nodes_[x - n]) visit(v);
      }
    }
    std::vector<std::size_t> blocks;
    if (parent[j] == kNone) return blocks;
    for (std::size_t x = j; x != i; x = parent[x])
      if (x >= n) blocks.push_back(x - n);
    return blocks;
  }

  const std::vector<LinkId>& links_of(std::size_t block) const { return block_links_[block]; }
  const std::vector<NodeId>& nodes_of(std::size_t block) const { return block_nodes_[block]; }

 private:
  void add_block(std::vector<LinkId> links) {
    const std::size_t id = block_links_.size();
    std::vector<NodeId> nodes;
    for (LinkId e : links) {
      nodes.push_back(g_.link(e).i);
      nodes.push_back(g_.link(e).j);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (NodeId v : nodes) node_blocks_[v].push_back(id);
    block_links_.push_back(std::move(links));
    block_nodes_.push_back(std::move(nodes));
  }

  const WeightedGraph& g_;
  std::vector<std::vector<std::size_t>> node_blocks_;
  std::vector<std::vector<LinkId>> block_links_;
  std::vector<std::vector<NodeId>> block_nodes_;
};

FlowSubgraph structural_from_index(const BlockCutIndex& index, NodeId i, NodeId j) {
  FlowSubgraph fs;
  fs.source = i;
  fs.destination = j;
  for (std::size_t b : index.path_blocks(i, j)) {
    const auto& links = index.links_of(b);
    const auto& nodes = index.nodes_of(b);
    fs.links.insert(fs.links.end(), links.begin(), links.end());
    fs.nodes.insert(fs.nodes.end(), nodes.begin(), nodes.end());
  }
  std::sort(fs.links.begin(), fs.links.end());
  std::sort(fs.nodes.begin(), fs.nodes.end());
  fs.nodes.erase(std::unique(fs.nodes.begin(), fs.nodes.end()), fs.nodes.end());
  return fs;
}

std::vector<std::pair<NodeId, NodeId>> sample_pairs(std::size_t n, std::size_t count, Rng& rng) {
  const std::size_t available = n * (n - 1) / 2;
  if (count > available)
    throw Error(ErrorCode::InvalidArgument, "more pairs requested than the graph has");
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(count);
  while (pairs.size() < count) {
    const NodeId a = pick(rng);
    const NodeId b = pick(rng);
    if (a == b) continue;
    const auto key = std::minmax(a, b);
    if (seen.insert({key.first, key.second}).second) pairs.push_back({a, b});
  }
  return pairs;
}

}  // namespace

FlowSubgraph structural_flow_subgraph(const WeightedGraph& g, NodeId i, NodeId j) {
  if (i >= g.node_count() || j >= g.node_count())
    throw Error(ErrorCode::IndexOutOfRange, "terminal outside graph");
  if (i == j) throw Error(ErrorCode::SameTerminal, "source equals destination");
  return structural_from_index(BlockCutIndex(g), i, j);
}

FlowFractions measure_flow_fractions(const WeightedGraph& g, std::size_t pair_count,
                                     std::uint64_t seed, FlowMethod method) {
  if (pair_count == 0) throw Error(ErrorCode::InvalidArgument, "pair_count must be >= 1");
  const std::size_t n = g.node_count();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "graph needs two nodes");

  Rng rng(seed);
  const auto pairs = sample_pairs(n, pair_count, rng);
  const auto comps = connected_components(g);

  std::unique_ptr<BlockCutIndex> blocks;
  // Per-component dense solvers, built on first use.
  struct DenseComponent {
    InducedSubgraph sub;
    std::vector<std::size_t> local;  // original node -> local id
    std::unique_ptr<LaplacianSolver> solver;
  };
  std::map<std::size_t, DenseComponent> dense;

  const double big_n = static_cast<double>(n);
  const double big_l = static_cast<double>(g.link_count());
  double sum_n = 0.0;
  double sum_l = 0.0;
  for (const auto& [a, b] : pairs) {
    const std::size_t c = comps.label[a];
    if (comps.label[b] != c) continue;  // no current between components

    const bool use_dense = method == FlowMethod::dense ||
                           (method == FlowMethod::automatic && comps.sizes[c] <= kDenseComponentCap);
    std::size_t node_count = 0;
    std::size_t link_count = 0;
    if (use_dense) {
      auto it = dense.find(c);
      if (it == dense.end()) {
        std::vector<NodeId> members;
        for (NodeId v = 0; v < n; ++v)
          if (comps.label[v] == c) members.push_back(v);
        DenseComponent dc{induced_subgraph(g, members), std::vector<std::size_t>(n, 0), nullptr};
        for (std::size_t k = 0; k < members.size(); ++k) dc.local[members[k]] = k;
        dc.solver = std::make_unique<LaplacianSolver>(dc.sub.graph);
        it = dense.emplace(c, std::move(dc)).first;
      }
      const auto& dc = it->second;
      const auto sol = solve_unit_flow(*dc.solver, dc.sub.graph, dc.local[a], dc.local[b]);
      const auto fs = extract_flow_subgraph(sol, dc.sub.graph);
      node_count = fs.nodes.size();
      link_count = fs.links.size();
    } else {
      if (!blocks) blocks = std::make_unique<BlockCutIndex>(g);
      const auto fs = structural_from_index(*blocks, a, b);
      node_count = fs.nodes.size();
      link_count = fs.links.size();
    }
    sum_n += static_cast<double>(node_count) / big_n;
    if (big_l > 0.0) sum_l += static_cast<double>(link_count) / big_l;
  }
  const double count = static_cast<double>(pairs.size());
  return {sum_n / count, sum_l / count, pairs.size()};
}

namespace {

double mean_of(const std::vector<FlowFractions>& t, double FlowFractions::*field) {
  double s = 0.0;
  for (const auto& f : t) s += f.*field;
  return t.empty() ? 0.0 : s / static_cast<double>(t.size());
}

double std_of(const std::vector<FlowFractions>& t, double FlowFractions::*field) {
  if (t.size() < 2) return 0.0;
  const double m = mean_of(t, field);
  double s = 0.0;
  for (const auto& f : t) s += (f.*field - m) * (f.*field - m);
  return std::sqrt(s / static_cast<double>(t.size() - 1));
}

}  // namespace

double FlowSweepResult::mean_rho_n() const { return mean_of(trials, &FlowFractions::mean_rho_n); }
double FlowSweepResult::mean_rho_l() const { return mean_of(trials, &FlowFractions::mean_rho_l); }
double FlowSweepResult::std_rho_n() const { return std_of(trials, &FlowFractions::mean_rho_n); }
double FlowSweepResult::std_rho_l() const { return std_of(trials, &FlowFractions::mean_rho_l); }

FlowSweepResult simulate_flow_fractions(std::size_t n, double mean_degree,
                                        const WeightModel& weights, std::size_t trials,
                                        std::size_t pairs, std::uint64_t seed, FlowMethod method,
                                        Execution exec) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const double p = mean_degree / static_cast<double>(n - 1);
  if (!(p > 0.0 && p <= 1.0))
    throw Error(ErrorCode::InvalidProbability, "mean degree gives p outside (0, 1]");

  FlowSweepResult result;
  result.trials.resize(trials);
  auto run = [&](std::size_t k) {
    const std::uint64_t trial_seed = derive_seed(seed, k);
    EnsembleSpec spec{n, ErModel{p}, weights, trial_seed};
    const auto g = sample_er(spec);
    result.trials[k] = measure_flow_fractions(g, pairs, derive_seed(trial_seed, 1), method);
  };
  if (exec == Execution::serial) {
    for (std::size_t k = 0; k < trials; ++k) run(k);
  } else {
    // Exceptions must not escape an OpenMP region.
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t k = 0; k < trials; ++k) {
      try {
        run(k);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  return result;
}

}  // namespace flownet
