#pragma once

#include <complex>

#include "ambc/config.hpp"
#include "ambc/rng.hpp"

namespace ambc {

using cplx = std::complex<double>;

/// One coherence interval's channel gains and the derived composite gain
/// h1 = h0 + alpha * hst * htr with effective powers P_i = |h_i|^2 * Ps.
class ChannelRealization {
 public:
  ChannelRealization(cplx h0, cplx hst, cplx htr, double alpha_amp, double ps_watts);

  cplx h0() const { return h0_; }
  cplx hst() const { return hst_; }
  cplx htr() const { return htr_; }
  cplx h1() const { return h1_; }
  double alpha_amp() const { return alpha_amp_; }
  double ps_watts() const { return ps_watts_; }
  double p0() const { return p0_; }
  double p1() const { return p1_; }
  double htr_power() const { return std::norm(htr_); }

  /// Same gains, different source power.
  ChannelRealization with_source_power(double ps_watts) const;

  /// Same gains except hst.
  ChannelRealization with_hst(cplx hst) const;

 private:
  cplx h0_, hst_, htr_, h1_;
  double alpha_amp_;
  double ps_watts_;
  double p0_, p1_;
};

/// Independent Rayleigh draws h ~ CN(0, r^-v) for the three links.
ChannelRealization draw_channels(const SystemParams& params, Rng& rng);

/// Deterministic channel whose gains are the real RMS amplitudes sqrt(r^-v).
ChannelRealization nominal_channels(const SystemParams& params);

/// Backscatter-to-direct power ratio alpha^2 |hst|^2 |htr|^2 / |h0|^2 in dB.
/// Throws DomainError when |h0| = 0.
double bdpr_db(const ChannelRealization& real);

/// Draws a realization, then rescales hst so that bdpr_db(result) equals the
/// target. h0 and htr are left untouched.
ChannelRealization channels_with_bdpr(const SystemParams& params, double target_bdpr_db, Rng& rng);

/// Rescales hst of an existing realization to hit the target BDPR.
ChannelRealization rescale_to_bdpr(const ChannelRealization& real, double target_bdpr_db);

}  // namespace ambc
