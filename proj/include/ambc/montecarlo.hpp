#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ambc/analysis.hpp"
#include "ambc/channel.hpp"
#include "ambc/config.hpp"
#include "ambc/rng.hpp"
#include "ambc/types.hpp"

namespace ambc {

enum class ThresholdPolicy { closed_form_true, estimated, numeric_oracle };

/// How channel realizations are chosen across trials.
///   fading      - a fresh Rayleigh draw per realization index
///   conditional - realization 0 reused for every trial
///   nominal     - the deterministic RMS-gain channel (or SweepSpec::fixed_channel)
enum class Averaging { fading, conditional, nominal };

enum class SweepVariable { ps_dbm, bdpr_db, pilot_fraction };

std::string_view to_string(ThresholdPolicy p);
std::string_view to_string(Averaging a);
std::string_view to_string(SweepVariable v);
ThresholdPolicy parse_threshold_policy(std::string_view s);
Averaging parse_averaging(std::string_view s);
Mode parse_mode(std::string_view s);

/// Energy-detector decision. The ordering of the hypothesis means selects
/// which side of the threshold maps to bit 1; Gamma == T falls on the >= side.
int detect(double gamma, double threshold, const HypothesisMoments& m);

/// Minimiser of ber_closed_form over a 10^4-point grid spanning
/// [delta_min - 3 sigma_min, delta_max + 3 sigma_max].
double numeric_oracle_threshold(const HypothesisMoments& m);

struct TrialResult {
  long long errors = 0;
  long long bits = 0;
  bool failed = false;
  std::string failure;         ///< reason when failed
  double threshold = 0.0;      ///< threshold applied (valid when !failed)
  double closed_form_ber = 0.0;  ///< ber_closed_form of the true moments at that threshold
};

/// One frame: draws K equiprobable bits (the leading pilots are overwritten
/// under the estimated policy), generates samples, picks the threshold per
/// policy, detects and counts errors on data symbols only. Estimation and
/// model-validity problems are reported as a failed trial.
TrialResult ber_trial(const SystemParams& params, const ChannelRealization& real, Rng& rng, Mode mode,
                      ThresholdPolicy policy);

struct SweepSpec {
  SystemParams scenario;
  SweepVariable variable = SweepVariable::ps_dbm;
  std::vector<double> values;
  std::vector<Mode> modes{Mode::lna};
  std::vector<ThresholdPolicy> policies{ThresholdPolicy::closed_form_true};
  Averaging averaging = Averaging::fading;
  std::optional<ChannelRealization> fixed_channel;  ///< used by Averaging::nominal when set
  std::optional<double> fixed_bdpr_db;  ///< rescale every realization to this BDPR (non-BDPR sweeps)
  int n_frames = 1;
  int n_realizations = 1;
  std::uint64_t master_seed = 0;

  /// Throws ValidationError before any work is done.
  void validate() const;
};

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 1.0;
  double halfwidth() const { return 0.5 * (hi - lo); }
};

/// 95 % Wilson score interval for a binomial proportion.
ConfidenceInterval wilson_interval(long long errors, long long trials, double z = 1.959963984540054);

struct BerPoint {
  SweepVariable variable = SweepVariable::ps_dbm;
  double value = 0.0;
  Mode mode = Mode::lna;
  ThresholdPolicy policy = ThresholdPolicy::closed_form_true;
  long long errors = 0;
  long long bits = 0;
  long long failures = 0;       ///< failed frames
  double ber = 0.0;             ///< errors / bits, NaN when bits == 0
  ConfidenceInterval ci;
  double ber_closed_form = 0.0; ///< mean over successful frames
  double threshold_mean = 0.0;
  bool reliable = false;        ///< at least 10 observed errors
  std::uint64_t master_seed = 0;
};

/// Runs every value x mode x policy point. Output order is
/// (value, then mode, then policy) and is independent of `workers`.
std::vector<BerPoint> run_sweep(const SweepSpec& spec, int workers = 1);

// Pilot-count sweep ------------------------------------------------------------

struct PilotSweepSpec {
  SystemParams scenario;
  std::vector<double> fractions;
  Mode mode = Mode::lna;
  Averaging averaging = Averaging::fading;
  std::optional<ChannelRealization> fixed_channel;
  int n_frames = 1;
  std::uint64_t master_seed = 0;

  void validate() const;
};

struct PilotPoint {
  double fraction = 0.0;
  int k_train = 0;
  double r_mean = 0.0;
  double r_median = 0.0;
  double r_p90 = 0.0;
  long long frames = 0;    ///< frames that produced an estimate
  long long failures = 0;  ///< frames whose estimate was degenerate
};

/// Relative error between the true and the pilot-estimated threshold per
/// frame, summarised per pilot fraction.
std::vector<PilotPoint> run_pilot_sweep(const PilotSweepSpec& spec, int workers = 1);

/// Linear-interpolation quantile of an unsorted sample (q in [0, 1]).
double quantile(std::vector<double> values, double q);

}  // namespace ambc
