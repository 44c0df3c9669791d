#include "flownet/degree_model.hpp"

#include <cmath>

#include "flownet/graph.hpp"

namespace flownet {

DegreeModel DegreeModel::er_binomial(std::size_t n, double p) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "binomial degree model needs n >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidProbability, "p outside [0,1]");
  return DegreeModel(Kind::er_binomial, n, p, static_cast<double>(n - 1) * p);
}

DegreeModel DegreeModel::er_poisson(double mean_degree) {
  if (!(mean_degree >= 0.0) || !std::isfinite(mean_degree))
    throw Error(ErrorCode::InvalidArgument, "mean degree must be >= 0");
  return DegreeModel(Kind::er_poisson, 0, 0.0, mean_degree);
}

double DegreeModel::mean_degree() const { return lambda_; }

PgfValues DegreeModel::pgf(double z) const {
  if (!(z >= 0.0 && z <= 1.0)) throw Error(ErrorCode::InvalidArgument, "pgf argument outside [0,1]");
  PgfValues v;
  if (kind_ == Kind::er_poisson) {
    // phi(z) = e^{-lambda(1-z)}; the excess-degree pgf of a Poisson law is itself.
    v.phi = std::exp(-lambda_ * (1.0 - z));
    v.phi_prime = lambda_ * v.phi;
    v.phi_excess = v.phi;
    v.phi_excess_prime = v.phi_prime;
    return v;
  }
  // phi(z) = (1 - p(1-z))^{n-1}, phi_excess(z) = (1 - p(1-z))^{n-2}.
  const double base = 1.0 - p_ * (1.0 - z);
  const double m = static_cast<double>(n_ - 1);
  v.phi = std::pow(base, m);
  v.phi_prime = m * p_ * std::pow(base, m - 1.0);
  v.phi_excess = (p_ > 0.0) ? std::pow(base, m - 1.0) : 1.0;
  v.phi_excess_prime = (m >= 2.0) ? (m - 1.0) * p_ * std::pow(base, m - 2.0) : 0.0;
  return v;
}

PgfValues pgf(const DegreeModel& model, double z) { return model.pgf(z); }

}  // namespace flownet
