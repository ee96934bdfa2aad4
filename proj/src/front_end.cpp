#include "ambc/front_end.hpp"

#include <ostream>
#include <string>

#include <fmt/format.h>

#include "ambc/errors.hpp"

namespace ambc {

SymbolFrame generate_frame(const SystemParams& params, const ChannelRealization& real,
                           std::span<const int> bits, Rng& rng, Mode mode) {
  const int n = params.n_samples;
  if (n < 1) throw ValidationError("generate_frame: n_samples must be >= 1");
  for (int b : bits) {
    if (b != 0 && b != 1) throw ValidationError("generate_frame: tag bits must be 0 or 1");
  }

  const double ps = real.ps_watts();
  const double n_ar = params.n_ar_watts();
  const double n_cov = params.n_cov_watts();
  const double n_at = params.n_at_watts();
  const double alpha = real.alpha_amp();
  const double beta1 = params.beta1;
  const double beta3 = params.beta3;
  const cplx backscatter = alpha * real.hst() * real.htr();
  const cplx tag_noise_gain = alpha * real.htr();

  SymbolFrame frame;
  frame.mode = mode;
  frame.bits.assign(bits.begin(), bits.end());
  frame.samples.reserve(bits.size() * static_cast<std::size_t>(n));

  ComplexGaussian cn;
  for (int d : bits) {
    const cplx g = real.h0() + backscatter * static_cast<double>(d);
    const cplx tag_path = tag_noise_gain * static_cast<double>(d);
    for (int i = 0; i < n; ++i) {
      const cplx s = cn(rng, ps);
      const cplx w_ar = cn(rng, n_ar);
      const cplx w_cov = cn(rng, n_cov);
      const cplx w_at = cn(rng, n_at);
      const cplx x = g * s;
      cplx y;
      if (mode == Mode::lna) {
        y = beta1 * x + beta3 * x * std::norm(x) + (beta1 * w_ar + w_cov + beta1 * tag_path * w_at);
      } else {
        y = x + (w_ar + w_cov + tag_path * w_at);
      }
      frame.samples.push_back(y);
    }
  }
  frame.energies = symbol_energies(frame.samples, n);
  return frame;
}

std::vector<double> symbol_energies(std::span<const cplx> samples, int n_samples) {
  if (n_samples < 1) throw ValidationError("symbol_energies: n_samples must be >= 1");
  const auto n = static_cast<std::size_t>(n_samples);
  if (samples.size() % n != 0) {
    throw ValidationError("symbol_energies: " + std::to_string(samples.size()) +
                          " samples is not a multiple of N = " + std::to_string(n_samples));
  }
  std::vector<double> energies;
  energies.reserve(samples.size() / n);
  for (std::size_t k = 0; k < samples.size(); k += n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(samples[k + i]);
    energies.push_back(acc / static_cast<double>(n));
  }
  return energies;
}

void write_samples_csv(const SymbolFrame& frame, int n_samples, std::ostream& out) {
  out << "index,symbol,bit,re,im\n";
  for (std::size_t i = 0; i < frame.samples.size(); ++i) {
    const std::size_t k = i / static_cast<std::size_t>(n_samples);
    out << fmt::format("{},{},{},{:.17g},{:.17g}\n", i, k, frame.bits[k], frame.samples[i].real(),
                       frame.samples[i].imag());
  }
}

}  // namespace ambc
