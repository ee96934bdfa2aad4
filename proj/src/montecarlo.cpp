#include "ambc/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ambc/errors.hpp"
#include "ambc/estimation.hpp"
#include "ambc/front_end.hpp"
#include "ambc/parallel.hpp"

namespace ambc {
namespace {

std::uint64_t mode_key(Mode m) { return m == Mode::lna ? 1 : 0; }

// Hypotheses with identical means carry no information; any threshold gives
// error rate 1/2, so the common mean is used.
double threshold_for(const HypothesisMoments& m, ThresholdPolicy policy) {
  if (m.delta0() == m.delta1()) return m.delta0();
  return policy == ThresholdPolicy::numeric_oracle ? numeric_oracle_threshold(m) : near_optimal_threshold(m);
}

struct UnitTally {
  long long errors = 0;
  long long bits = 0;
  long long failures = 0;
  long long successes = 0;
  double closed_form_sum = 0.0;
  double threshold_sum = 0.0;
};

SystemParams params_for_value(const SystemParams& base, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::ps_dbm: return with_override(base, "ps_dbm", value);
    case SweepVariable::pilot_fraction: return with_override(base, "pilot_fraction", value);
    case SweepVariable::bdpr_db: break;
  }
  if (!std::isfinite(value)) throw ValidationError("BDPR sweep values must be finite");
  return base;
}

ChannelRealization base_channel(const SystemParams& params, Averaging averaging,
                                const std::optional<ChannelRealization>& fixed, std::uint64_t seed,
                                std::uint64_t realization) {
  if (averaging == Averaging::nominal) {
    return fixed ? fixed->with_source_power(params.ps_watts()) : nominal_channels(params);
  }
  const std::uint64_t r = averaging == Averaging::conditional ? 0 : realization;
  Rng rng = make_stream({seed, static_cast<std::uint64_t>(StreamTag::channel), r});
  return draw_channels(params, rng);
}

}  // namespace

TrialResult ber_trial(const SystemParams& params, const ChannelRealization& real, Rng& rng, Mode mode,
                      ThresholdPolicy policy) {
  const auto k_symbols = static_cast<std::size_t>(params.k_symbols);
  std::vector<int> bits(k_symbols);
  for (auto& b : bits) b = static_cast<int>(rng() >> 63);

  std::size_t first_data = 0;
  std::optional<PilotPlan> plan;
  if (policy == ThresholdPolicy::estimated) {
    plan.emplace(PilotPlan::from_params(params));
    if (static_cast<std::size_t>(plan->k_train()) >= k_symbols) {
      throw ValidationError("pilot count leaves no data symbols in the frame");
    }
    std::copy(plan->bits().begin(), plan->bits().end(), bits.begin());
    first_data = static_cast<std::size_t>(plan->k_train());
  }

  const SymbolFrame frame = generate_frame(params, real, bits, rng, mode);

  TrialResult result;
  try {
    const HypothesisMoments truth = true_moments(params, real, mode);
    const HypothesisMoments detector_moments =
        policy == ThresholdPolicy::estimated ? estimate_moments(frame.energies, *plan) : truth;
    result.threshold = policy == ThresholdPolicy::estimated ? estimated_threshold(detector_moments)
                                                            : threshold_for(truth, policy);
    result.closed_form_ber = ber_closed_form(truth, result.threshold);

    for (std::size_t k = first_data; k < k_symbols; ++k) {
      const int decided = detect(frame.energies[k], result.threshold, detector_moments);
      result.errors += decided != bits[k] ? 1 : 0;
      ++result.bits;
    }
  } catch (const EstimationError& e) {
    result = TrialResult{.failed = true, .failure = e.what()};
  } catch (const DomainError& e) {
    result = TrialResult{.failed = true, .failure = e.what()};
  } catch (const ModelValidityError& e) {
    result = TrialResult{.failed = true, .failure = e.what()};
  }
  return result;
}

void SweepSpec::validate() const {
  scenario.validate();
  if (values.empty()) throw ValidationError("sweep has no values");
  if (modes.empty()) throw ValidationError("sweep has no receiver modes");
  if (policies.empty()) throw ValidationError("sweep has no threshold policies");
  if (n_frames < 1) throw ValidationError("n_frames must be >= 1");
  if (n_realizations < 1) throw ValidationError("n_realizations must be >= 1");
  if (fixed_bdpr_db && variable == SweepVariable::bdpr_db) {
    throw ValidationError("a fixed BDPR cannot be combined with a BDPR sweep");
  }
  if (fixed_bdpr_db && !std::isfinite(*fixed_bdpr_db)) throw ValidationError("fixed BDPR must be finite");
  for (double v : values) {
    const SystemParams p = params_for_value(scenario, variable, v);
    for (auto policy : policies) {
      if (policy == ThresholdPolicy::estimated) {
        const PilotPlan plan = PilotPlan::from_params(p);
        if (plan.k_train() >= p.k_symbols) throw ValidationError("pilot count leaves no data symbols");
      }
    }
  }
}

std::vector<BerPoint> run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();

  const std::size_t n_values = spec.values.size();
  const std::size_t n_modes = spec.modes.size();
  const std::size_t n_policies = spec.policies.size();
  const auto n_real = static_cast<std::size_t>(spec.n_realizations);
  const std::size_t n_points = n_values * n_modes * n_policies;

  std::vector<SystemParams> point_params;
  point_params.reserve(n_values);
  for (double v : spec.values) point_params.push_back(params_for_value(spec.scenario, spec.variable, v));

  // One unit per (value, mode, policy, realization); tallies land in fixed slots.
  std::vector<UnitTally> tallies(n_points * n_real);
  parallel_for(tallies.size(), workers, [&](std::size_t unit) {
    const std::size_t r = unit % n_real;
    const std::size_t point = unit / n_real;
    const std::size_t p_idx = point % n_policies;
    const std::size_t m_idx = (point / n_policies) % n_modes;
    const std::size_t v_idx = point / (n_policies * n_modes);

    const SystemParams& params = point_params[v_idx];
    const Mode mode = spec.modes[m_idx];
    const ThresholdPolicy policy = spec.policies[p_idx];

    ChannelRealization real = base_channel(params, spec.averaging, spec.fixed_channel, spec.master_seed, r);
    if (spec.variable == SweepVariable::bdpr_db) {
      real = rescale_to_bdpr(real, spec.values[v_idx]);
    } else if (spec.fixed_bdpr_db) {
      real = rescale_to_bdpr(real, *spec.fixed_bdpr_db);
    }

    UnitTally& tally = tallies[unit];
    for (int f = 0; f < spec.n_frames; ++f) {
      Rng rng = make_stream({spec.master_seed, static_cast<std::uint64_t>(StreamTag::frame), v_idx,
                             mode_key(mode), r, static_cast<std::uint64_t>(f)});
      const TrialResult trial = ber_trial(params, real, rng, mode, policy);
      if (trial.failed) {
        ++tally.failures;
        continue;
      }
      tally.errors += trial.errors;
      tally.bits += trial.bits;
      ++tally.successes;
      tally.closed_form_sum += trial.closed_form_ber;
      tally.threshold_sum += trial.threshold;
    }
  });

  std::vector<BerPoint> points;
  points.reserve(n_points);
  for (std::size_t point = 0; point < n_points; ++point) {
    const std::size_t p_idx = point % n_policies;
    const std::size_t m_idx = (point / n_policies) % n_modes;
    const std::size_t v_idx = point / (n_policies * n_modes);

    UnitTally sum;
    for (std::size_t r = 0; r < n_real; ++r) {
      const UnitTally& t = tallies[point * n_real + r];
      sum.errors += t.errors;
      sum.bits += t.bits;
      sum.failures += t.failures;
      sum.successes += t.successes;
      sum.closed_form_sum += t.closed_form_sum;
      sum.threshold_sum += t.threshold_sum;
    }

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    BerPoint bp;
    bp.variable = spec.variable;
    bp.value = spec.values[v_idx];
    bp.mode = spec.modes[m_idx];
    bp.policy = spec.policies[p_idx];
    bp.errors = sum.errors;
    bp.bits = sum.bits;
    bp.failures = sum.failures;
    bp.ber = sum.bits > 0 ? static_cast<double>(sum.errors) / static_cast<double>(sum.bits) : nan;
    bp.ci = wilson_interval(sum.errors, sum.bits);
    bp.ber_closed_form = sum.successes > 0 ? sum.closed_form_sum / static_cast<double>(sum.successes) : nan;
    bp.threshold_mean = sum.successes > 0 ? sum.threshold_sum / static_cast<double>(sum.successes) : nan;
    bp.reliable = sum.errors >= 10;
    bp.master_seed = spec.master_seed;
    points.push_back(bp);
  }
  return points;
}

}  // namespace ambc
