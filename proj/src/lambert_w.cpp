#include "flownet/lambert_w.hpp"

#include <cmath>
#include <numbers>

#include "flownet/graph.hpp"

namespace flownet {

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr double kBranchSlack = 1e-15;
constexpr int kMaxIter = 100;
constexpr double kTol = 1e-14;

double initial_guess(double x) {
  if (x < -0.25) {
    // Series about the branch point in p = sqrt(2(e x + 1)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }
  if (x < 1.0) return x * (1.0 + x * (-1.0 + x * 1.5));
  const double l = std::log1p(x);
  return l * (1.0 - std::log1p(l) / (2.0 + l));
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) throw Error(ErrorCode::DomainError, "NaN argument");
  if (x < -kInvE) {
    if (x < -kInvE - kBranchSlack) throw Error(ErrorCode::DomainError, "argument below -1/e");
    return -1.0;
  }
  if (x == 0.0) return 0.0;
  if (x == -kInvE) return -1.0;

  double w = initial_guess(x);
  for (int it = 0; it < kMaxIter; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= kTol * (1.0 + std::abs(w))) return w;
  }
  return w;
}

}  // namespace flownet
