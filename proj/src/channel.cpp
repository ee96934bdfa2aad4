#include "ambc/channel.hpp"

#include <cmath>

#include "ambc/errors.hpp"

namespace ambc {

ChannelRealization::ChannelRealization(cplx h0, cplx hst, cplx htr, double alpha_amp, double ps_watts)
    : h0_(h0),
      hst_(hst),
      htr_(htr),
      h1_(h0 + alpha_amp * hst * htr),
      alpha_amp_(alpha_amp),
      ps_watts_(ps_watts),
      p0_(std::norm(h0_) * ps_watts),
      p1_(std::norm(h1_) * ps_watts) {}

ChannelRealization ChannelRealization::with_source_power(double ps_watts) const {
  return {h0_, hst_, htr_, alpha_amp_, ps_watts};
}

ChannelRealization ChannelRealization::with_hst(cplx hst) const {
  return {h0_, hst, htr_, alpha_amp_, ps_watts_};
}

ChannelRealization draw_channels(const SystemParams& params, Rng& rng) {
  ComplexGaussian cn;
  const cplx h0 = cn(rng, params.var_h0());
  const cplx hst = cn(rng, params.var_hst());
  const cplx htr = cn(rng, params.var_htr());
  return {h0, hst, htr, params.alpha_amp(), params.ps_watts()};
}

ChannelRealization nominal_channels(const SystemParams& params) {
  return {cplx(std::sqrt(params.var_h0()), 0.0), cplx(std::sqrt(params.var_hst()), 0.0),
          cplx(std::sqrt(params.var_htr()), 0.0), params.alpha_amp(), params.ps_watts()};
}

double bdpr_db(const ChannelRealization& real) {
  const double direct = std::norm(real.h0());
  if (direct == 0.0) throw DomainError("bdpr: direct-link gain is zero");
  const double a = real.alpha_amp();
  const double backscatter = a * a * std::norm(real.hst()) * std::norm(real.htr());
  return 10.0 * std::log10(backscatter / direct);
}

ChannelRealization rescale_to_bdpr(const ChannelRealization& real, double target_bdpr_db) {
  if (!std::isfinite(target_bdpr_db)) throw ValidationError("target BDPR must be finite");
  const double amp_product = real.alpha_amp() * std::abs(real.hst()) * std::abs(real.htr());
  const double direct = std::abs(real.h0());
  if (direct == 0.0 || amp_product == 0.0) {
    throw DomainError("bdpr: cannot rescale a realization with a zero gain");
  }
  const double wanted = direct * std::pow(10.0, target_bdpr_db / 20.0);
  return real.with_hst(real.hst() * (wanted / amp_product));
}

ChannelRealization channels_with_bdpr(const SystemParams& params, double target_bdpr_db, Rng& rng) {
  constexpr int kMaxDraws = 64;
  for (int i = 0; i < kMaxDraws; ++i) {
    const ChannelRealization real = draw_channels(params, rng);
    if (real.h0() == cplx{} || real.hst() == cplx{} || real.htr() == cplx{}) continue;
    return rescale_to_bdpr(real, target_bdpr_db);
  }
  throw DomainError("bdpr: no usable channel draw after repeated attempts");
}

}  // namespace ambc
