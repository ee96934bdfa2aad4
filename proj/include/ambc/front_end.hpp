#pragma once

#include <span>
#include <vector>

#include "ambc/channel.hpp"
#include "ambc/config.hpp"
#include "ambc/rng.hpp"
#include "ambc/types.hpp"

namespace ambc {

/// One frame of K tag symbols, their K*N baseband samples and the
/// per-symbol energy statistics.
struct SymbolFrame {
  std::vector<int> bits;
  std::vector<cplx> samples;
  std::vector<double> energies;
  Mode mode = Mode::lna;
};

/// Generates K*N samples for the given tag bits over a fixed channel.
///
/// Per sample the draw order is s, w_ar, w_cov, w_at; the tag noise is drawn
/// even when d[k] = 0 so that frames differing only in their bits share every
/// random draw. In LNA mode the cubic term acts on the noiseless signal only.
SymbolFrame generate_frame(const SystemParams& params, const ChannelRealization& real,
                           std::span<const int> bits, Rng& rng, Mode mode);

/// Gamma_k = (1/N) * sum of |y|^2 over each block of N samples.
/// Throws ValidationError if the sample count is not a multiple of N.
std::vector<double> symbol_energies(std::span<const cplx> samples, int n_samples);

/// Writes samples as `index,symbol,bit,re,im` rows. Debug aid only.
void write_samples_csv(const SymbolFrame& frame, int n_samples, std::ostream& out);

}  // namespace ambc
