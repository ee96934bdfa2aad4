#pragma once

#include <span>
#include <vector>

#include "ambc/analysis.hpp"
#include "ambc/config.hpp"

namespace ambc {

/// Known tag symbols placed at the head of a frame. The pattern alternates
/// 0, 1, 0, 1, ... so both groups hold exactly k_train / 2 symbols.
class PilotPlan {
 public:
  /// Throws ValidationError unless k_train is even and >= 4.
  explicit PilotPlan(int k_train);

  /// Plan for round(pilot_fraction * k_symbols) pilots.
  static PilotPlan from_params(const SystemParams& params);

  int k_train() const { return static_cast<int>(bits_.size()); }
  const std::vector<int>& bits() const { return bits_; }

 private:
  std::vector<int> bits_;
};

/// Pilot-based moment estimates from the leading k_train energies:
///   delta_i = (2 / K_train) * sum over group i
///   var_i   = (2 / (K_train - 2)) * sum over group i of (A - delta_i)^2
/// Throws EstimationError (insufficient_pilots) when there are too few
/// energies or a group has fewer than two members, and (degenerate_estimate)
/// when an estimated variance is zero.
HypothesisMoments estimate_moments(std::span<const double> energies, const PilotPlan& plan);

/// Same estimator with explicit per-symbol labels; `labels.size()` symbols
/// are used.
HypothesisMoments estimate_moments(std::span<const double> energies, std::span<const int> labels);

/// near_optimal_threshold applied to estimated moments.
double estimated_threshold(const HypothesisMoments& estimated);

/// |t_true - t_est| / |t_est|. Throws DomainError when t_est == 0.
double relative_threshold_error(double t_true, double t_est);

}  // namespace ambc
