#include "flownet/edge_list.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace flownet {

namespace {

std::optional<std::size_t> header_node_count(const std::string& line) {
  // "# nodes: 34" with arbitrary spacing.
  std::istringstream s(line.substr(1));
  std::string key;
  std::size_t n = 0;
  if (s >> key && key == "nodes:" && s >> n) return n;
  return std::nullopt;
}

}  // namespace

WeightedGraph read_edge_list(std::istream& in) {
  std::optional<std::size_t> declared;
  std::vector<Link> links;
  std::size_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (!declared) declared = header_node_count(line.substr(first));
      continue;
    }
    std::istringstream s(line);
    long long a = -1;
    long long b = -1;
    if (!(s >> a >> b) || a < 0 || b < 0)
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 'i j [w]'");
    double w = 1.0;
    std::string rest;
    if (s >> rest) {
      std::size_t used = 0;
      try {
        w = std::stod(rest, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != rest.size())
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad weight");
      if (s >> rest)
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": too many columns");
    }
    links.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), w});
    max_id = std::max<std::size_t>(max_id, static_cast<std::size_t>(std::max(a, b)));
    any = true;
  }
  const std::size_t n = declared.value_or(any ? max_id + 1 : 0);
  return WeightedGraph(n, std::move(links));
}

WeightedGraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "# nodes: " << g.node_count() << '\n';
  char buf[64];
  for (const auto& l : g.links()) {
    std::snprintf(buf, sizeof buf, "%.17g", l.weight);
    out << l.i << ' ' << l.j << ' ' << buf << '\n';
  }
}

void write_edge_list(const std::filesystem::path& path, const WeightedGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  write_edge_list(out, g);
  if (!out) throw std::ios_base::failure("write failed for " + path.string());
}

}  // namespace flownet
