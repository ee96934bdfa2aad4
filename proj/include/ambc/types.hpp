#pragma once

#include <string_view>

namespace ambc {

/// Receiver front-end variant.
enum class Mode { no_lna, lna };

/// Tag symbol hypothesis: H0 is d[k] = 0 (absorb), H1 is d[k] = 1 (reflect).
enum class Hypothesis { h0, h1 };

constexpr std::string_view to_string(Mode m) {
  return m == Mode::lna ? "lna" : "no_lna";
}

constexpr int tag_bit(Hypothesis h) { return h == Hypothesis::h1 ? 1 : 0; }

}  // namespace ambc
