#include "flownet/random_ensembles.hpp"

#include <charconv>
#include <cmath>
#include <queue>
#include <vector>

namespace flownet {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform_open01(Rng& rng) {
  // (k + 0.5) / 2^53 for k in [0, 2^53) never hits 0 or 1.
  const std::uint64_t k = rng() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

WeightModel WeightModel::identical(double w) {
  if (!(w > 0.0)) throw Error(ErrorCode::NonPositiveWeight, "identical weight must be > 0");
  return {Kind::identical, w, 1, 1};
}

WeightModel WeightModel::uniform01() { return {Kind::uniform01, 1.0, 1, 1}; }

WeightModel WeightModel::exponential(double mean) {
  if (!(mean > 0.0)) throw Error(ErrorCode::InvalidArgument, "exponential mean must be > 0");
  return {Kind::exponential, mean, 1, 1};
}

WeightModel WeightModel::integer_uniform(int lo, int hi) {
  if (lo < 1 || hi < lo) throw Error(ErrorCode::InvalidArgument, "integer weights need 1 <= lo <= hi");
  return {Kind::integer_uniform, 1.0, lo, hi};
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidArgument, "bad number '" + std::string(s) + "'");
  return v;
}

int to_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidArgument, "bad integer '" + std::string(s) + "'");
  return v;
}

std::string fmt_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

WeightModel WeightModel::parse(std::string_view text) {
  const auto parts = split(text, ':');
  const auto head = parts.front();
  if (head == "identical" && parts.size() <= 2)
    return identical(parts.size() == 2 ? to_double(parts[1]) : 1.0);
  if ((head == "uniform" || head == "uniform01") && parts.size() == 1) return uniform01();
  if ((head == "exponential" || head == "exp") && parts.size() == 2)
    return exponential(to_double(parts[1]));
  if ((head == "int" || head == "integer") && parts.size() == 3)
    return integer_uniform(to_int(parts[1]), to_int(parts[2]));
  throw Error(ErrorCode::InvalidArgument, "unknown weight model '" + std::string(text) + "'");
}

std::string WeightModel::name() const {
  switch (kind) {
    case Kind::identical: return value == 1.0 ? "identical" : "identical:" + fmt_number(value);
    case Kind::uniform01: return "uniform";
    case Kind::exponential: return "exponential:" + fmt_number(value);
    case Kind::integer_uniform: return "int:" + std::to_string(lo) + ":" + std::to_string(hi);
  }
  return "?";
}

double WeightModel::sample(Rng& rng) const {
  switch (kind) {
    case Kind::identical: return value;
    case Kind::uniform01: return uniform_open01(rng);
    case Kind::exponential: return -value * std::log(uniform_open01(rng));
    case Kind::integer_uniform: {
      const auto span = static_cast<std::uint64_t>(hi - lo + 1);
      // Rejection sampling keeps the draw exactly uniform.
      const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                  std::numeric_limits<std::uint64_t>::max() % span;
      std::uint64_t r;
      do {
        r = rng();
      } while (r >= limit);
      return static_cast<double>(lo + static_cast<int>(r % span));
    }
  }
  return value;
}

WeightedGraph sample_er(const EnsembleSpec& spec) {
  const auto* er = std::get_if<ErModel>(&spec.model);
  if (er == nullptr) throw Error(ErrorCode::InvalidArgument, "spec is not an ER model");
  if (!(er->p > 0.0 && er->p <= 1.0))
    throw Error(ErrorCode::InvalidProbability, "ER probability must lie in (0, 1]");
  if (spec.n < 2) throw Error(ErrorCode::InvalidArgument, "ensemble needs n >= 2");

  Rng rng(spec.seed);
  std::vector<Link> links;
  const std::size_t n = spec.n;
  if (er->p >= 1.0) {
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j) links.push_back({i, j, 1.0});
  } else {
    // Geometric skipping over the pairs (v, w), w < v (Batagelj-Brandes).
    const double log_q = std::log1p(-er->p);
    long long v = 1;
    long long w = -1;
    const auto nn = static_cast<long long>(n);
    while (v < nn) {
      const double r = uniform_open01(rng);
      w += 1 + static_cast<long long>(std::floor(std::log(r) / log_q));
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) links.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v), 1.0});
    }
  }
  for (auto& l : links) l.weight = spec.weights.sample(rng);
  return WeightedGraph(n, std::move(links));
}

WeightedGraph sample_tree(const EnsembleSpec& spec) {
  if (!std::holds_alternative<TreeModel>(spec.model))
    throw Error(ErrorCode::InvalidArgument, "spec is not a tree model");
  const std::size_t n = spec.n;
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "tree needs n >= 2");

  Rng rng(spec.seed);
  std::vector<Link> links;
  links.reserve(n - 1);
  if (n == 2) {
    links.push_back({0, 1, 1.0});
  } else {
    std::vector<NodeId> code(n - 2);
    std::uniform_int_distribution<NodeId> pick(0, n - 1);
    for (auto& c : code) c = pick(rng);

    std::vector<std::size_t> degree(n, 1);
    for (NodeId c : code) ++degree[c];
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> leaves;
    for (NodeId v = 0; v < n; ++v)
      if (degree[v] == 1) leaves.push(v);
    for (NodeId c : code) {
      const NodeId leaf = leaves.top();
      leaves.pop();
      links.push_back({leaf, c, 1.0});
      if (--degree[c] == 1) leaves.push(c);
    }
    const NodeId a = leaves.top();
    leaves.pop();
    links.push_back({a, leaves.top(), 1.0});
  }
  for (auto& l : links) l.weight = spec.weights.sample(rng);
  return WeightedGraph(n, std::move(links));
}

WeightedGraph sample(const EnsembleSpec& spec) {
  return std::holds_alternative<TreeModel>(spec.model) ? sample_tree(spec) : sample_er(spec);
}

}  // namespace flownet
