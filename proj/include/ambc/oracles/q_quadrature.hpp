#pragma once

namespace ambc::oracle {

/// Gaussian tail (1/sqrt(2 pi)) * integral_x^inf exp(-t^2/2) dt by adaptive
/// Gauss-Kronrod quadrature of the defining integral.
double q_by_quadrature(double x);

}  // namespace ambc::oracle
