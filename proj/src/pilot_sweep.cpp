#include <cmath>
#include <limits>
#include <numeric>

#include "ambc/errors.hpp"
#include "ambc/estimation.hpp"
#include "ambc/front_end.hpp"
#include "ambc/montecarlo.hpp"
#include "ambc/parallel.hpp"

namespace ambc {
namespace {

struct FrameOutcome {
  bool ok = false;
  double r = 0.0;
};

}  // namespace

void PilotSweepSpec::validate() const {
  scenario.validate();
  if (fractions.empty()) throw ValidationError("pilot sweep has no fractions");
  if (n_frames < 1) throw ValidationError("n_frames must be >= 1");
  for (double f : fractions) {
    const SystemParams p = with_override(scenario, "pilot_fraction", f);
    if (f == 0.0) throw ValidationError("pilot fraction must be > 0");
    PilotPlan plan = PilotPlan::from_params(p);
    if (plan.k_train() > p.k_symbols) throw ValidationError("more pilots than symbols");
  }
}

std::vector<PilotPoint> run_pilot_sweep(const PilotSweepSpec& spec, int workers) {
  spec.validate();

  const std::size_t n_fracs = spec.fractions.size();
  const auto n_frames = static_cast<std::size_t>(spec.n_frames);
  std::vector<PilotPlan> plans;
  plans.reserve(n_fracs);
  for (double f : spec.fractions) plans.push_back(PilotPlan::from_params(with_override(spec.scenario, "pilot_fraction", f)));

  std::vector<FrameOutcome> outcomes(n_fracs * n_frames);
  parallel_for(outcomes.size(), workers, [&](std::size_t unit) {
    const std::size_t f = unit % n_frames;
    const std::size_t i = unit / n_frames;
    const SystemParams& params = spec.scenario;

    ChannelRealization real = nominal_channels(params);
    if (spec.averaging == Averaging::nominal) {
      if (spec.fixed_channel) real = spec.fixed_channel->with_source_power(params.ps_watts());
    } else {
      const std::uint64_t r = spec.averaging == Averaging::conditional ? 0 : f;
      Rng channel_rng = make_stream({spec.master_seed, static_cast<std::uint64_t>(StreamTag::channel), r});
      real = draw_channels(params, channel_rng);
    }

    // Only the pilot symbols feed the estimator, so only they are generated.
    Rng rng = make_stream({spec.master_seed, static_cast<std::uint64_t>(StreamTag::auxiliary), i,
                           spec.mode == Mode::lna ? 1u : 0u, f});
    const PilotPlan& plan = plans[i];
    try {
      const SymbolFrame frame = generate_frame(params, real, plan.bits(), rng, spec.mode);
      const double t_true = near_optimal_threshold(true_moments(params, real, spec.mode));
      const double t_est = estimated_threshold(estimate_moments(frame.energies, plan));
      outcomes[unit] = {true, relative_threshold_error(t_true, t_est)};
    } catch (const EstimationError&) {
      outcomes[unit] = {};
    } catch (const DomainError&) {
      outcomes[unit] = {};
    } catch (const ModelValidityError&) {
      outcomes[unit] = {};
    }
  });

  std::vector<PilotPoint> points;
  points.reserve(n_fracs);
  for (std::size_t i = 0; i < n_fracs; ++i) {
    std::vector<double> rs;
    rs.reserve(n_frames);
    long long failures = 0;
    for (std::size_t f = 0; f < n_frames; ++f) {
      const FrameOutcome& o = outcomes[i * n_frames + f];
      if (o.ok) {
        rs.push_back(o.r);
      } else {
        ++failures;
      }
    }
    PilotPoint pt;
    pt.fraction = spec.fractions[i];
    pt.k_train = plans[i].k_train();
    pt.frames = static_cast<long long>(rs.size());
    pt.failures = failures;
    pt.r_mean = rs.empty() ? std::numeric_limits<double>::quiet_NaN()
                           : std::accumulate(rs.begin(), rs.end(), 0.0) / static_cast<double>(rs.size());
    pt.r_median = quantile(rs, 0.5);
    pt.r_p90 = quantile(rs, 0.9);
    points.push_back(pt);
  }
  return points;
}

}  // namespace ambc
