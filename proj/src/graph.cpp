#include "flownet/graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_set>

namespace flownet {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateLink: return "DuplicateLink";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::SameTerminal: return "SameTerminal";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::SingularDemand: return "SingularDemand";
    case ErrorCode::DegenerateDemand: return "DegenerateDemand";
    case ErrorCode::BridgeRemoval: return "BridgeRemoval";
    case ErrorCode::ZeroResistance: return "ZeroResistance";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Link> links)
    : n_(n), links_(std::move(links)) {
  if (n_ == 0) throw Error(ErrorCode::InvalidArgument, "graph needs at least one node");
  if (n_ > std::numeric_limits<std::uint32_t>::max())
    throw Error(ErrorCode::InvalidArgument, "node count too large");

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(links_.size() * 2);
  for (auto& l : links_) {
    if (l.i >= n_ || l.j >= n_)
      throw Error(ErrorCode::IndexOutOfRange,
                  "link (" + std::to_string(l.i) + "," + std::to_string(l.j) + ") with n=" +
                      std::to_string(n_));
    if (l.i == l.j) throw Error(ErrorCode::SelfLoop, "self loop at node " + std::to_string(l.i));
    if (!(l.weight > 0.0) || !std::isfinite(l.weight))
      throw Error(ErrorCode::NonPositiveWeight,
                  "link (" + std::to_string(l.i) + "," + std::to_string(l.j) + ")");
    if (l.i > l.j) std::swap(l.i, l.j);
    if (!seen.insert(pair_key(l.i, l.j)).second)
      throw Error(ErrorCode::DuplicateLink,
                  "(" + std::to_string(l.i) + "," + std::to_string(l.j) + ")");
  }

  offsets_.assign(n_ + 1, 0);
  for (const auto& l : links_) {
    ++offsets_[l.i + 1];
    ++offsets_[l.j + 1];
  }
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (LinkId id = 0; id < links_.size(); ++id) {
    const auto& l = links_[id];
    adjacency_[fill[l.i]++] = {l.j, id};
    adjacency_[fill[l.j]++] = {l.i, id};
  }
}

double WeightedGraph::strength(NodeId v) const {
  double s = 0.0;
  for (const auto& a : neighbors(v)) s += links_[a.link].weight;
  return s;
}

std::optional<LinkId> WeightedGraph::find_link(NodeId a, NodeId b) const {
  if (a >= n_ || b >= n_) return std::nullopt;
  if (hop_degree(a) > hop_degree(b)) std::swap(a, b);
  for (const auto& adj : neighbors(a))
    if (adj.node == b) return adj.link;
  return std::nullopt;
}

Eigen::MatrixXd WeightedGraph::weighted_adjacency() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& l : links_) {
    a(l.i, l.j) = l.weight;
    a(l.j, l.i) = l.weight;
  }
  return a;
}

WeightedGraph WeightedGraph::without_link(LinkId id) const {
  if (id >= links_.size()) throw Error(ErrorCode::IndexOutOfRange, "link id");
  std::vector<Link> rest;
  rest.reserve(links_.size() - 1);
  for (LinkId k = 0; k < links_.size(); ++k)
    if (k != id) rest.push_back(links_[k]);
  return WeightedGraph(n_, std::move(rest));
}

WeightedGraph WeightedGraph::scaled(double factor) const {
  std::vector<Link> out(links_.begin(), links_.end());
  for (auto& l : out) l.weight *= factor;
  return WeightedGraph(n_, std::move(out));
}

WeightedGraph build_graph(std::size_t n, std::vector<Link> links) {
  return WeightedGraph(n, std::move(links));
}

Components connected_components(const WeightedGraph& g) {
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  Components c;
  c.label.assign(g.node_count(), kUnset);
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (c.label[s] != kUnset) continue;
    const std::size_t id = c.sizes.size();
    queue.clear();
    queue.push_back(s);
    c.label[s] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& a : g.neighbors(queue[head])) {
        if (c.label[a.node] == kUnset) {
          c.label[a.node] = id;
          queue.push_back(a.node);
        }
      }
    }
    c.sizes.push_back(queue.size());
  }
  return c;
}

bool is_connected(const WeightedGraph& g) { return connected_components(g).count() == 1; }

InducedSubgraph induced_subgraph(const WeightedGraph& g, std::span<const NodeId> nodes) {
  constexpr auto kAbsent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> local(g.node_count(), kAbsent);
  for (std::size_t k = 0; k < nodes.size(); ++k) local[nodes[k]] = k;

  std::vector<Link> links;
  std::vector<LinkId> origin;
  for (LinkId id = 0; id < g.link_count(); ++id) {
    const auto& l = g.link(id);
    if (local[l.i] != kAbsent && local[l.j] != kAbsent) {
      links.push_back({local[l.i], local[l.j], l.weight});
      origin.push_back(id);
    }
  }
  return {WeightedGraph(nodes.size(), std::move(links)),
          std::vector<NodeId>(nodes.begin(), nodes.end()), std::move(origin)};
}

}  // namespace flownet
