#include "ambc/estimation.hpp"

#include <array>
#include <cmath>
#include <string>

#include "ambc/errors.hpp"

namespace ambc {

PilotPlan::PilotPlan(int k_train) {
  if (k_train < 4 || k_train % 2 != 0) {
    throw ValidationError("pilot plan needs an even pilot count >= 4, got " + std::to_string(k_train));
  }
  bits_.resize(static_cast<std::size_t>(k_train));
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] = static_cast<int>(k % 2);
}

PilotPlan PilotPlan::from_params(const SystemParams& params) { return PilotPlan(params.pilot_count()); }

HypothesisMoments estimate_moments(std::span<const double> energies, std::span<const int> labels) {
  using Kind = EstimationError::Kind;
  const std::size_t k_train = labels.size();
  if (energies.size() < k_train) {
    throw EstimationError(Kind::insufficient_pilots, "fewer energies than pilot symbols");
  }
  if (k_train < 3) {
    throw EstimationError(Kind::insufficient_pilots, "at least two pilots per group are required");
  }

  std::array<double, 2> sum{};
  std::array<int, 2> count{};
  for (std::size_t k = 0; k < k_train; ++k) {
    const int b = labels[k];
    if (b != 0 && b != 1) throw ValidationError("pilot labels must be 0 or 1");
    sum[b] += energies[k];
    ++count[b];
  }
  if (count[0] < 2 || count[1] < 2) {
    throw EstimationError(Kind::insufficient_pilots, "each pilot group needs at least two symbols");
  }

  const double kt = static_cast<double>(k_train);
  const std::array<double, 2> mean{2.0 / kt * sum[0], 2.0 / kt * sum[1]};
  std::array<double, 2> ss{};
  for (std::size_t k = 0; k < k_train; ++k) {
    const int b = labels[k];
    const double d = energies[k] - mean[b];
    ss[b] += d * d;
  }
  const std::array<double, 2> var{2.0 / (kt - 2.0) * ss[0], 2.0 / (kt - 2.0) * ss[1]};
  if (!(var[0] > 0.0) || !(var[1] > 0.0)) {
    throw EstimationError(Kind::degenerate_estimate, "estimated variance is zero; threshold undefined");
  }
  return {mean[0], mean[1], var[0], var[1], HypothesisMoments::Source::estimated};
}

HypothesisMoments estimate_moments(std::span<const double> energies, const PilotPlan& plan) {
  return estimate_moments(energies, std::span<const int>(plan.bits()));
}

double estimated_threshold(const HypothesisMoments& estimated) { return near_optimal_threshold(estimated); }

double relative_threshold_error(double t_true, double t_est) {
  if (t_est == 0.0) throw DomainError("relative threshold error undefined for a zero estimate");
  return std::abs(t_true - t_est) / std::abs(t_est);
}

}  // namespace ambc
