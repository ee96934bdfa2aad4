#pragma once

#include <functional>

namespace ambc::oracle {

/// Plain bisection. Requires f(lo) and f(hi) of opposite sign (or zero).
double bisect_root(const std::function<double(double)>& f, double lo, double hi, int max_iter = 400);

struct GridMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Minimum of f over `points` equally spaced samples of [lo, hi],
/// endpoints included.
GridMinimum grid_minimize(const std::function<double(double)>& f, double lo, double hi, int points);

/// ln of the Gaussian density N(mean, var) at x.
double gaussian_log_pdf(double x, double mean, double var);

/// ln f0(x) - ln f1(x) for Gaussians N(mean0, var0) and N(mean1, var1).
double gaussian_log_pdf_gap(double x, double mean0, double var0, double mean1, double var1);

}  // namespace ambc::oracle
