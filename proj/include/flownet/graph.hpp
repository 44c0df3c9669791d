#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace flownet {

using NodeId = std::size_t;
using LinkId = std::size_t;

enum class ErrorCode {
  DuplicateLink,
  SelfLoop,
  NonPositiveWeight,
  IndexOutOfRange,
  Disconnected,
  SameTerminal,
  InvalidProbability,
  NonConvergence,
  DomainError,
  NotRealizable,
  SingularDemand,
  DegenerateDemand,
  BridgeRemoval,
  ZeroResistance,
  InvalidArgument,
  Parse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// An undirected resistor between i and j (stored with i < j).
/// `weight` is the conductance; the resistance is its reciprocal.
struct Link {
  NodeId i = 0;
  NodeId j = 0;
  double weight = 1.0;

  double resistance() const { return 1.0 / weight; }
};

struct Adjacent {
  NodeId node;
  LinkId link;
};

/// Immutable weighted undirected graph on nodes 0..n-1.
///
/// Construction validates the link list (no self loops, no duplicate
/// unordered pairs, strictly positive weights) and normalizes every link to
/// i < j while keeping the caller's link order, so link ids are stable.
class WeightedGraph {
 public:
  WeightedGraph(std::size_t n, std::vector<Link> links);

  std::size_t node_count() const { return n_; }
  std::size_t link_count() const { return links_.size(); }

  std::span<const Link> links() const { return links_; }
  const Link& link(LinkId id) const { return links_.at(id); }

  std::span<const Adjacent> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t hop_degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  /// Weighted degree (row sum of the weighted adjacency matrix).
  double strength(NodeId v) const;

  std::optional<LinkId> find_link(NodeId a, NodeId b) const;

  Eigen::MatrixXd weighted_adjacency() const;

  WeightedGraph without_link(LinkId id) const;
  /// Every weight multiplied by `factor`.
  WeightedGraph scaled(double factor) const;

 private:
  std::size_t n_;
  std::vector<Link> links_;
  std::vector<std::size_t> offsets_;
  std::vector<Adjacent> adjacency_;
};

WeightedGraph build_graph(std::size_t n, std::vector<Link> links);

struct Components {
  std::vector<std::size_t> label;  // component index per node
  std::vector<std::size_t> sizes;

  std::size_t count() const { return sizes.size(); }
};

/// Connected components by breadth-first labeling; labels follow the order of
/// each component's smallest node.
Components connected_components(const WeightedGraph& g);
bool is_connected(const WeightedGraph& g);

/// Subgraph induced on `nodes` (relabelled 0..k-1 in the given order).
struct InducedSubgraph {
  WeightedGraph graph;
  std::vector<NodeId> original;    // local -> original node id
  std::vector<LinkId> link_origin; // local link -> original link id
};
InducedSubgraph induced_subgraph(const WeightedGraph& g, std::span<const NodeId> nodes);

}  // namespace flownet
