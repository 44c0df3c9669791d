#pragma once

#include <filesystem>
#include <iosfwd>

#include "flownet/graph.hpp"

namespace flownet {

// Plain-text edge lists: one "i j [w]" link per line with 0-based node ids,
// '#' comment lines, and an optional "# nodes: n" header fixing the node
// count (otherwise max id + 1). Two-column lines get weight 1.

WeightedGraph read_edge_list(std::istream& in);
WeightedGraph read_edge_list(const std::filesystem::path& path);

/// Writes the header and every link with round-trip (17 digit) weights.
void write_edge_list(std::ostream& out, const WeightedGraph& g);
void write_edge_list(const std::filesystem::path& path, const WeightedGraph& g);

}  // namespace flownet
