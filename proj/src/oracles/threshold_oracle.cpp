#include "ambc/oracles/threshold_oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ambc::oracle {

double bisect_root(const std::function<double(double)>& f, double lo, double hi, int max_iter) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) throw std::invalid_argument("bisect_root: no sign change");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid == lo || mid == hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

GridMinimum grid_minimize(const std::function<double(double)>& f, double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("grid_minimize: need at least two points");
  GridMinimum best{lo, f(lo)};
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (int i = 1; i < points; ++i) {
    const double x = i == points - 1 ? hi : lo + step * i;
    const double v = f(x);
    if (v < best.value) best = {x, v};
  }
  return best;
}

double gaussian_log_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * var) - d * d / (2.0 * var);
}

double gaussian_log_pdf_gap(double x, double mean0, double var0, double mean1, double var1) {
  return gaussian_log_pdf(x, mean0, var0) - gaussian_log_pdf(x, mean1, var1);
}

}  // namespace ambc::oracle
