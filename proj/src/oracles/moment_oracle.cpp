#include "ambc/oracles/moment_oracle.hpp"

#include <cmath>

namespace ambc::oracle {
namespace {

long long factorial(int m) {
  long long f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

Polynomial Polynomial::constant(long long c) {
  Polynomial p;
  if (c != 0) p.terms_[Exponents{}] = c;
  return p;
}

Polynomial Polynomial::variable(int index) {
  Polynomial p;
  Exponents e{};
  e[static_cast<std::size_t>(index)] = 1;
  p.terms_[e] = 1;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) {
    if ((out.terms_[e] += c) == 0) out.terms_.erase(e);
  }
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * constant(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e{};
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      if ((out.terms_[e] += ca * cb) == 0) out.terms_.erase(e);
    }
  }
  return out;
}

Polynomial Polynomial::pow(int e) const {
  Polynomial out = constant(1);
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

Polynomial Polynomial::expect_exponential() const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    Exponents moved = e;
    const int m = moved[kZ];
    moved[kZ] = 0;
    moved[kPower] += m;
    if ((out.terms_[moved] += c * factorial(m)) == 0) out.terms_.erase(moved);
  }
  return out;
}

long long Polynomial::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

double Polynomial::evaluate(double beta1, double beta3, double p, double n_aw, double z) const {
  const std::array<double, 5> v{beta1, beta3, p, n_aw, z};
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = static_cast<double>(c);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) term *= v[i];
    }
    acc += term;
  }
  return acc;
}

EnergyMomentPolynomials derive_energy_moments() {
  const auto b1 = Polynomial::variable(kBeta1);
  const auto b3 = Polynomial::variable(kBeta3);
  const auto z = Polynomial::variable(kZ);
  const auto n = Polynomial::variable(kNoise);

  // |x|^2 = Z (beta1 + beta3 Z)^2 and |x|^4 = Z^2 (beta1 + beta3 Z)^4.
  const auto gain = b1 + b3 * z;
  const auto x2 = (z * gain.pow(2)).expect_exponential();
  const auto x4 = (z.pow(2) * gain.pow(4)).expect_exponential();

  // Circular complex Gaussian noise: E|w|^2 = N_aw, E|w|^4 = 2 N_aw^2.
  const auto w2 = n;
  const auto w4 = Polynomial::constant(2) * n.pow(2);

  // |y|^2 = |x|^2 + |w|^2 + 2|x||w| cos(phi) with phi uniform and
  // independent of both magnitudes: odd powers of cos vanish and
  // E[cos^2] = 1/2, so the squared cross term contributes 4 * (1/2) E|x|^2 E|w|^2.
  const auto y2 = x2 + w2;
  const auto y4 = x4 + w4 + Polynomial::constant(2) * x2 * w2 + Polynomial::constant(2) * x2 * w2;

  return {y2, y4 - y2 * y2};
}

OracleMoments energy_moments(double beta1, double beta3, double p, double n_aw, int n_samples) {
  static const EnergyMomentPolynomials polys = derive_energy_moments();
  return {polys.mean.evaluate(beta1, beta3, p, n_aw),
          polys.sample_variance.evaluate(beta1, beta3, p, n_aw) / static_cast<double>(n_samples)};
}

}  // namespace ambc::oracle
