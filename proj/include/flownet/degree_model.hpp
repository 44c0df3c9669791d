#pragma once

#include <cstddef>

namespace flownet {

/// Degree pgf phi_D, excess-degree pgf phi_D' = phi_D'(z) / phi_D'(1), and
/// their first derivatives, all evaluated at one point z.
struct PgfValues {
  double phi = 0.0;
  double phi_excess = 0.0;
  double phi_prime = 0.0;
  double phi_excess_prime = 0.0;
};

/// Degree distribution of an Erdos-Renyi ensemble: exact binomial for G_p(n)
/// or its sparse Poisson limit with mean degree lambda.
class DegreeModel {
 public:
  enum class Kind { er_binomial, er_poisson };

  static DegreeModel er_binomial(std::size_t n, double p);
  static DegreeModel er_poisson(double mean_degree);

  Kind kind() const { return kind_; }
  double mean_degree() const;
  std::size_t n() const { return n_; }
  double p() const { return p_; }

  PgfValues pgf(double z) const;

 private:
  DegreeModel(Kind kind, std::size_t n, double p, double lambda)
      : kind_(kind), n_(n), p_(p), lambda_(lambda) {}

  Kind kind_;
  std::size_t n_;
  double p_;
  double lambda_;
};

PgfValues pgf(const DegreeModel& model, double z);

}  // namespace flownet
