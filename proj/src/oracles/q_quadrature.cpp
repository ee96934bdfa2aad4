#include "ambc/oracles/q_quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ambc::oracle {

double q_by_quadrature(double x) {
  using boost::math::quadrature::gauss_kronrod;
  const auto density = [](long double t) { return std::exp(-t * t / 2.0L); };
  const long double integral = gauss_kronrod<long double, 61>::integrate(
      density, static_cast<long double>(x), std::numeric_limits<long double>::infinity(), 20, 1e-17L);
  return static_cast<double>(integral / std::sqrt(2.0L * std::numbers::pi_v<long double>));
}

}  // namespace ambc::oracle
