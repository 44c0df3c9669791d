#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>

#include "flownet/graph.hpp"

namespace flownet {

using Rng = std::mt19937_64;

/// Mixes (seed, stream) into an independent 64-bit seed (splitmix64 finalizer).
/// Monte-Carlo trial k always draws from Rng(derive_seed(seed, k)), so serial
/// and parallel sweeps see the same graphs.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform double on the open interval (0, 1) from 53 random bits.
double uniform_open01(Rng& rng);

struct WeightModel {
  enum class Kind { identical, uniform01, exponential, integer_uniform };

  Kind kind = Kind::identical;
  double value = 1.0;  // identical weight, or exponential mean
  int lo = 1;
  int hi = 1;

  static WeightModel identical(double w = 1.0);
  static WeightModel uniform01();
  static WeightModel exponential(double mean);
  static WeightModel integer_uniform(int lo, int hi);

  /// Accepts "identical[:w]", "uniform", "exponential:<mean>", "int:<lo>:<hi>".
  static WeightModel parse(std::string_view text);
  std::string name() const;

  double sample(Rng& rng) const;
};

struct ErModel {
  double p = 0.5;
};
struct TreeModel {};

struct EnsembleSpec {
  std::size_t n = 2;
  std::variant<ErModel, TreeModel> model = ErModel{};
  WeightModel weights = WeightModel::identical();
  std::uint64_t seed = 0;
};

/// G_p(n): each unordered pair present independently with probability p
/// (0 < p <= 1), weights i.i.d. from the weight model. Disconnected samples are
/// returned as is.
WeightedGraph sample_er(const EnsembleSpec& spec);

/// Uniformly random labeled tree decoded from a uniform Pruefer sequence.
WeightedGraph sample_tree(const EnsembleSpec& spec);

WeightedGraph sample(const EnsembleSpec& spec);

}  // namespace flownet
