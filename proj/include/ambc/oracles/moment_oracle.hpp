#pragma once

#include <array>
#include <map>

namespace ambc::oracle {

/// Exponents of (beta1, beta3, P, N_aw, Z) in one monomial.
using Exponents = std::array<int, 5>;

/// Multivariate polynomial with exact integer coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(long long c);
  static Polynomial variable(int index);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial pow(int e) const;

  /// Replaces Z^m by m! P^m, i.e. the expectation over an exponential Z
  /// with mean P.
  Polynomial expect_exponential() const;

  long long coefficient(const Exponents& e) const;
  const std::map<Exponents, long long>& terms() const { return terms_; }

  double evaluate(double beta1, double beta3, double p, double n_aw, double z = 0.0) const;

 private:
  std::map<Exponents, long long> terms_;
};

enum Var : int { kBeta1 = 0, kBeta3 = 1, kPower = 2, kNoise = 3, kZ = 4 };

/// Per-sample moments of |y|^2 = |x + w|^2 with x = h s (beta1 + beta3 Z),
/// Z = |h s|^2 ~ Exp(mean P) and w ~ CN(0, N_aw), derived symbolically.
struct EnergyMomentPolynomials {
  Polynomial mean;             ///< E|y|^2
  Polynomial sample_variance;  ///< var|y|^2 = N * var[Gamma]
};

EnergyMomentPolynomials derive_energy_moments();

struct OracleMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Numeric evaluation of the symbolic moments for the energy statistic
/// averaged over N samples.
OracleMoments energy_moments(double beta1, double beta3, double p, double n_aw, int n_samples);

}  // namespace ambc::oracle
