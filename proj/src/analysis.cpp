#include "ambc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "ambc/errors.hpp"

namespace ambc {
namespace {

constexpr double sq(double x) { return x * x; }

void require_valid_power(double p, const char* what) {
  if (!std::isfinite(p) || p < 0.0) {
    throw ValidationError(std::string(what) + ": power must be finite and >= 0");
  }
}

// ln f0(x) - ln f1(x) for the two Gaussian approximations.
double log_pdf_gap(const HypothesisMoments& m, double x) {
  return 0.5 * std::log(m.var1() / m.var0()) - sq(x - m.delta0()) / (2.0 * m.var0()) +
         sq(x - m.delta1()) / (2.0 * m.var1());
}

double log_pdf_gap_slope(const HypothesisMoments& m, double x) {
  return -(x - m.delta0()) / m.var0() + (x - m.delta1()) / m.var1();
}

constexpr double kResidualBound = 1e-9;
constexpr double kEqualVarianceBand = 1e-9;

bool acceptable(const HypothesisMoments& m, double t, double lo, double hi) {
  return std::isfinite(t) && t >= lo && t <= hi && pdf_equality_residual(m, t) <= kResidualBound;
}

// A few Newton steps on the log-gap. Stops early once the step stalls.
double polish(const HypothesisMoments& m, double t) {
  for (int i = 0; i < 4 && std::isfinite(t); ++i) {
    const double slope = log_pdf_gap_slope(m, t);
    if (slope == 0.0 || !std::isfinite(slope)) break;
    const double next = t - log_pdf_gap(m, t) / slope;
    if (next == t) break;
    t = next;
  }
  return t;
}

}  // namespace

HypothesisMoments::HypothesisMoments(double delta0, double delta1, double var0, double var1, Source source)
    : delta0_(delta0), delta1_(delta1), var0_(var0), var1_(var1), source_(source) {
  if (!std::isfinite(delta0) || !std::isfinite(delta1)) {
    throw ModelValidityError("hypothesis means must be finite");
  }
  if (!std::isfinite(var0) || !std::isfinite(var1) || var0 <= 0.0 || var1 <= 0.0) {
    throw ModelValidityError("hypothesis variances must be positive and finite (var0 = " +
                             std::to_string(var0) + ", var1 = " + std::to_string(var1) + ")");
  }
}

double nolna_noise_power(const SystemParams& params, double htr_power, Hypothesis h) {
  const double a = params.alpha_amp();
  return params.n_ar_watts() + params.n_cov_watts() + a * a * htr_power * params.n_at_watts() * tag_bit(h);
}

double lna_noise_power(const SystemParams& params, double htr_power, Hypothesis h) {
  const double a = params.alpha_amp();
  const double b1sq = sq(params.beta1);
  return b1sq * params.n_ar_watts() + params.n_cov_watts() +
         b1sq * a * a * htr_power * params.n_at_watts() * tag_bit(h);
}

EnergyMoments lna_moments(double power, double noise_aw, LnaCoefficients coeffs, int n_samples) {
  require_valid_power(power, "lna_moments");
  require_valid_power(noise_aw, "lna_moments noise");
  if (n_samples < 1) throw ValidationError("lna_moments: N must be >= 1");

  const double b1 = coeffs.beta1;
  const double b3 = coeffs.beta3;
  const double p = power;
  const double nw = noise_aw;

  const double mean = sq(b1) * p + 6.0 * sq(b3) * p * p * p + 4.0 * b1 * b3 * p * p + nw;

  const double p2 = p * p;
  const double p3 = p2 * p;
  const double signal = std::pow(b1, 4) * p2 + 16.0 * std::pow(b1, 3) * b3 * p3 +
                        116.0 * sq(b1) * sq(b3) * p2 * p2 + 432.0 * b1 * std::pow(b3, 3) * p3 * p2 +
                        684.0 * std::pow(b3, 4) * p3 * p3;
  const double cross = 2.0 * sq(b1) * p * nw + 8.0 * b1 * b3 * p2 * nw + 12.0 * sq(b3) * p3 * nw;
  const double variance = (signal + cross + nw * nw) / static_cast<double>(n_samples);

  if (!std::isfinite(mean) || !std::isfinite(variance) || variance <= 0.0) {
    throw ModelValidityError("LNA energy variance is not positive and finite at input power " +
                             std::to_string(power) + " W (outside the polynomial model's range)");
  }
  return {mean, variance};
}

EnergyMoments lna_moments(double power, const SystemParams& params, double htr_power, Hypothesis h) {
  return lna_moments(power, lna_noise_power(params, htr_power, h), {params.beta1, params.beta3},
                     params.n_samples);
}

EnergyMoments nolna_moments(double power, double noise_w, int n_samples) {
  require_valid_power(power, "nolna_moments");
  require_valid_power(noise_w, "nolna_moments noise");
  if (n_samples < 1) throw ValidationError("nolna_moments: N must be >= 1");
  const double total = power + noise_w;
  return {total, (sq(power) + 2.0 * power * noise_w + sq(noise_w)) / static_cast<double>(n_samples)};
}

EnergyMoments nolna_moments(double power, const SystemParams& params, double htr_power, Hypothesis h) {
  return nolna_moments(power, nolna_noise_power(params, htr_power, h), params.n_samples);
}

HypothesisMoments true_moments(const SystemParams& params, const ChannelRealization& real, Mode mode) {
  const double htr_power = real.htr_power();
  EnergyMoments m0, m1;
  if (mode == Mode::lna) {
    m0 = lna_moments(real.p0(), params, htr_power, Hypothesis::h0);
    m1 = lna_moments(real.p1(), params, htr_power, Hypothesis::h1);
  } else {
    m0 = nolna_moments(real.p0(), params, htr_power, Hypothesis::h0);
    m1 = nolna_moments(real.p1(), params, htr_power, Hypothesis::h1);
  }
  return {m0.mean, m1.mean, m0.variance, m1.variance, HypothesisMoments::Source::closed_form};
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double ber_closed_form(const HypothesisMoments& m, double threshold) {
  const double s0 = std::sqrt(m.var0());
  const double s1 = std::sqrt(m.var1());
  if (m.delta0() <= m.delta1()) {
    // Decide 1 when Gamma >= T: miss under H1 below T, false alarm under H0 above.
    return 0.5 * q_function((m.delta1() - threshold) / s1) + 0.5 * q_function((threshold - m.delta0()) / s0);
  }
  return 0.5 * q_function((threshold - m.delta1()) / s1) + 0.5 * q_function((m.delta0() - threshold) / s0);
}

double pdf_equality_residual(const HypothesisMoments& m, double threshold) {
  const double gap = log_pdf_gap(m, threshold);
  if (!std::isfinite(gap)) return 1.0;
  return -std::expm1(-std::abs(gap));
}

double near_optimal_threshold(const HypothesisMoments& m) {
  const double d0 = m.delta0();
  const double d1 = m.delta1();
  if (d0 == d1) throw DomainError("near_optimal_threshold: hypothesis means coincide");

  const double lo = std::min(d0, d1);
  const double hi = std::max(d0, d1);
  const double c = m.var1() / m.var0();
  const double log_c = std::log(c);

  if (std::abs(c - 1.0) < kEqualVarianceBand) {
    return 0.5 * (d0 + d1);
  }

  // Closed form with the "+" root. When dbar < 0 the sum cancels, so the
  // algebraically identical conjugate form is used instead.
  const double dbar = d0 * c - d1;
  const double disc = std::max(0.0, c * sq(d0 - d1) + c * (m.var1() - m.var0()) * log_c);
  const double root = std::sqrt(disc);
  double t = dbar >= 0.0 ? (dbar + root) / (c - 1.0)
                         : (c * d0 * d0 - d1 * d1 - m.var1() * log_c) / (dbar - root);
  if (acceptable(m, t, lo, hi)) return t;
  t = polish(m, t);
  if (acceptable(m, t, lo, hi)) return t;

  // Crossing inside the mean interval, found numerically.
  const auto gap = [&m](double x) { return log_pdf_gap(m, x); };
  const double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo < 0.0) != (g_hi < 0.0)) {
    boost::uintmax_t max_iter = 200;
    const auto bracket = boost::math::tools::toms748_solve(gap, lo, hi, g_lo, g_hi,
                                                           boost::math::tools::eps_tolerance<double>(), max_iter);
    t = polish(m, 0.5 * (bracket.first + bracket.second));
    return std::clamp(t, lo, hi);
  }

  // No crossing between the means: take whichever quadratic root gives the
  // lower error rate.
  const double r_plus = polish(m, (dbar + root) / (c - 1.0));
  const double r_minus = polish(m, (dbar - root) / (c - 1.0));
  return ber_closed_form(m, r_plus) <= ber_closed_form(m, r_minus) ? r_plus : r_minus;
}

DeflectionNoise deflection_noise(const SystemParams& params, double htr_power) {
  const double tag = sq(params.alpha_amp()) * htr_power * params.n_at_watts();
  const double b1sq = sq(params.beta1);
  return {params.n_ar_watts() + params.n_cov_watts() + tag,
          b1sq * params.n_ar_watts() + params.n_cov_watts() + b1sq * tag};
}

double deflection_no_lna(double p0, double p1, const SystemParams& params, double htr_power) {
  require_valid_power(p0, "deflection_no_lna");
  require_valid_power(p1, "deflection_no_lna");
  const double n_w = deflection_noise(params, htr_power).n_w;
  return params.n_samples * sq((p1 - p0) / (p0 + n_w));
}

double deflection_lna_full(double p0, double p1, const SystemParams& params, double htr_power) {
  require_valid_power(p0, "deflection_lna_full");
  require_valid_power(p1, "deflection_lna_full");
  const double b1 = params.beta1;
  const double b3 = params.beta3;
  const double nw = deflection_noise(params, htr_power).n_aw;

  const double numerator = sq(b1) * (p1 - p0) + 6.0 * sq(b3) * (p1 * p1 * p1 - p0 * p0 * p0) +
                           4.0 * b1 * b3 * (p1 * p1 - p0 * p0);
  const double q2 = p0 * p0;
  const double q3 = q2 * p0;
  const double denominator = std::pow(b1, 4) * q2 + 16.0 * std::pow(b1, 3) * b3 * q3 +
                             116.0 * sq(b1) * sq(b3) * q2 * q2 + 432.0 * b1 * std::pow(b3, 3) * q3 * q2 +
                             684.0 * std::pow(b3, 4) * q3 * q3 + 2.0 * sq(b1) * p0 * nw +
                             8.0 * b1 * b3 * q2 * nw + 12.0 * sq(b3) * q3 * nw + nw * nw;
  if (!std::isfinite(denominator) || denominator <= 0.0 || !std::isfinite(numerator)) {
    throw ModelValidityError("deflection_lna_full: H0 energy variance is not positive and finite");
  }
  return params.n_samples * sq(numerator) / denominator;
}

double deflection_lna_approx(double p0, double p1, const SystemParams& params, double htr_power) {
  require_valid_power(p0, "deflection_lna_approx");
  require_valid_power(p1, "deflection_lna_approx");
  const double referred = deflection_noise(params, htr_power).n_aw / sq(params.beta1);
  return params.n_samples * sq((p1 - p0) / (p0 + referred));
}

}  // namespace ambc
