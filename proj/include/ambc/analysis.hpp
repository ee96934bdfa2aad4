#pragma once

#include "ambc/channel.hpp"
#include "ambc/config.hpp"
#include "ambc/types.hpp"

namespace ambc {

/// Mean (W) and variance (W^2) of the per-symbol energy statistic.
struct EnergyMoments {
  double mean = 0.0;
  double variance = 0.0;
};

struct LnaCoefficients {
  double beta1 = 1.0;
  double beta3 = 0.0;
};

/// Mean and variance of the energy statistic under both hypotheses.
/// Construction rejects non-finite values and non-positive variances.
class HypothesisMoments {
 public:
  enum class Source { closed_form, estimated };

  HypothesisMoments(double delta0, double delta1, double var0, double var1,
                    Source source = Source::closed_form);

  double delta0() const { return delta0_; }
  double delta1() const { return delta1_; }
  double var0() const { return var0_; }
  double var1() const { return var1_; }
  Source source() const { return source_; }

  double mean(Hypothesis h) const { return h == Hypothesis::h0 ? delta0_ : delta1_; }
  double variance(Hypothesis h) const { return h == Hypothesis::h0 ? var0_ : var1_; }

  /// Same moments with the hypothesis labels exchanged.
  HypothesisMoments swapped() const { return {delta1_, delta0_, var1_, var0_, source_}; }

 private:
  double delta0_, delta1_, var0_, var1_;
  Source source_;
};

// Noise powers ----------------------------------------------------------------

/// N_w = N_ar + N_cov + alpha^2 |htr|^2 N_at d, with d gated by the hypothesis.
double nolna_noise_power(const SystemParams& params, double htr_power, Hypothesis h);

/// N_aw = beta1^2 N_ar + N_cov + beta1^2 alpha^2 |htr|^2 N_at d.
double lna_noise_power(const SystemParams& params, double htr_power, Hypothesis h);

// Energy-statistic moments ----------------------------------------------------

/// Moments of the LNA energy statistic for input power `power` and total
/// post-LNA noise `noise_aw`. Throws ModelValidityError when the variance is
/// not a positive finite number.
EnergyMoments lna_moments(double power, double noise_aw, LnaCoefficients coeffs, int n_samples);

/// Convenience overload using the scenario's coefficients and gated N_aw.
EnergyMoments lna_moments(double power, const SystemParams& params, double htr_power, Hypothesis h);

/// Linear receiver: mean P + N_w, variance (P + N_w)^2 / N.
EnergyMoments nolna_moments(double power, double noise_w, int n_samples);

EnergyMoments nolna_moments(double power, const SystemParams& params, double htr_power, Hypothesis h);

/// Closed-form moments of both hypotheses for a channel realization.
HypothesisMoments true_moments(const SystemParams& params, const ChannelRealization& real, Mode mode);

// Detection performance -------------------------------------------------------

/// Gaussian tail probability Q(x) = 0.5 erfc(x / sqrt(2)).
double q_function(double x);

/// Equal-prior BER of the energy detector at threshold T under the Gaussian
/// approximation. Each mean is paired with its own hypothesis variance; the
/// branch follows the detector's ordering rule (delta0 <= delta1 decides 1
/// above the threshold).
double ber_closed_form(const HypothesisMoments& m, double threshold);

/// Crossing point of the two Gaussian PDFs that minimises ber_closed_form.
///
/// Evaluates the closed-form root first. If it is not finite, misses the
/// PDF-equality residual bound or falls outside [delta_min, delta_max], the
/// crossing inside that interval is found numerically; when no crossing lies
/// inside, the lower-BER root of the crossing quadratic is returned.
/// Throws DomainError when delta0 == delta1.
double near_optimal_threshold(const HypothesisMoments& m);

/// Relative PDF mismatch |f0(T) - f1(T)| / max(f0(T), f1(T)), evaluated in
/// the log domain.
double pdf_equality_residual(const HypothesisMoments& m, double threshold);

// Deflection coefficients ---------------------------------------------------------

/// Noise powers used by the deflection coefficients. Unlike the frame model,
/// the tag-noise term is always present here.
struct DeflectionNoise {
  double n_w = 0.0;   ///< N_ar + N_cov + alpha^2 |htr|^2 N_at
  double n_aw = 0.0;  ///< beta1^2 N_ar + N_cov + beta1^2 alpha^2 |htr|^2 N_at
};

DeflectionNoise deflection_noise(const SystemParams& params, double htr_power);

/// N ((P1 - P0) / (P0 + N_w))^2.
double deflection_no_lna(double p0, double p1, const SystemParams& params, double htr_power);

/// (E[Gamma|H1] - E[Gamma|H0])^2 / var[Gamma|H0] with the full polynomial
/// moments of the LNA receiver.
double deflection_lna_full(double p0, double p1, const SystemParams& params, double htr_power);

/// Small-power approximation N ((P1 - P0) / (P0 + N_aw / beta1^2))^2.
double deflection_lna_approx(double p0, double p1, const SystemParams& params, double htr_power);

}  // namespace ambc
