#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace ambc {

using Rng = std::mt19937_64;

/// Purpose tags mixed into stream keys so that channel, frame and auxiliary
/// streams never share a key.
enum class StreamTag : std::uint64_t {
  channel = 0x4348,
  frame = 0x4652,
  auxiliary = 0x4155,
};

/// Seeds an independent engine from a key tuple via std::seed_seq over the
/// full 64-bit words, e.g. {master_seed, tag, sweep_index, mode, r, f}.
/// Distinct tuples give distinct seed sequences.
Rng make_stream(std::initializer_list<std::uint64_t> key);

/// Circularly-symmetric complex Gaussian CN(0, variance): real and imaginary
/// parts are independent N(0, variance / 2).
class ComplexGaussian {
 public:
  std::complex<double> operator()(Rng& rng, double variance) {
    const double sd = std::sqrt(0.5 * variance);
    const double re = normal_(rng);
    const double im = normal_(rng);
    return {sd * re, sd * im};
  }

 private:
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ambc
