#include <algorithm>
#include <cmath>
#include <string>

#include "ambc/errors.hpp"
#include "ambc/montecarlo.hpp"
#include "ambc/oracles/threshold_oracle.hpp"

namespace ambc {

std::string_view to_string(ThresholdPolicy p) {
  switch (p) {
    case ThresholdPolicy::closed_form_true: return "closed_form_true";
    case ThresholdPolicy::estimated: return "estimated";
    case ThresholdPolicy::numeric_oracle: return "numeric_oracle";
  }
  return "?";
}

std::string_view to_string(Averaging a) {
  switch (a) {
    case Averaging::fading: return "fading";
    case Averaging::conditional: return "conditional";
    case Averaging::nominal: return "nominal";
  }
  return "?";
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::ps_dbm: return "ps";
    case SweepVariable::bdpr_db: return "bdpr";
    case SweepVariable::pilot_fraction: return "pilot";
  }
  return "?";
}

ThresholdPolicy parse_threshold_policy(std::string_view s) {
  for (auto p : {ThresholdPolicy::closed_form_true, ThresholdPolicy::estimated, ThresholdPolicy::numeric_oracle}) {
    if (s == to_string(p)) return p;
  }
  throw ValidationError("unknown threshold policy '" + std::string(s) + "'");
}

Averaging parse_averaging(std::string_view s) {
  for (auto a : {Averaging::fading, Averaging::conditional, Averaging::nominal}) {
    if (s == to_string(a)) return a;
  }
  throw ValidationError("unknown averaging mode '" + std::string(s) + "'");
}

Mode parse_mode(std::string_view s) {
  if (s == "lna") return Mode::lna;
  if (s == "no_lna") return Mode::no_lna;
  throw ValidationError("unknown receiver mode '" + std::string(s) + "'");
}

int detect(double gamma, double threshold, const HypothesisMoments& m) {
  if (m.delta0() > m.delta1()) return gamma >= threshold ? 0 : 1;
  return gamma < threshold ? 0 : 1;
}

double numeric_oracle_threshold(const HypothesisMoments& m) {
  constexpr int kGridPoints = 10'000;
  const double s_min = std::sqrt(std::min(m.var0(), m.var1()));
  const double s_max = std::sqrt(std::max(m.var0(), m.var1()));
  const double lo = std::min(m.delta0(), m.delta1()) - 3.0 * s_min;
  const double hi = std::max(m.delta0(), m.delta1()) + 3.0 * s_max;
  return oracle::grid_minimize([&m](double t) { return ber_closed_form(m, t); }, lo, hi, kGridPoints).x;
}

ConfidenceInterval wilson_interval(long long errors, long long trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto below = static_cast<std::size_t>(std::floor(pos));
  const std::size_t above = std::min(below + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(below);
  return values[below] + frac * (values[above] - values[below]);
}

}  // namespace ambc
