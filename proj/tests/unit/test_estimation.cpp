#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ambc/errors.hpp"
#include "ambc/estimation.hpp"
#include "ambc/oracles/threshold_oracle.hpp"

using namespace ambc;

TEST_CASE("pilot plan") {
  const PilotPlan plan(6);
  CHECK(plan.bits() == std::vector<int>{0, 1, 0, 1, 0, 1});
  CHECK_THROWS_AS(PilotPlan(5), ValidationError);
  CHECK_THROWS_AS(PilotPlan(2), ValidationError);
  CHECK_THROWS_AS(PilotPlan(0), ValidationError);

  SystemParams p = paper_defaults();
  p.k_symbols = 200;
  p.pilot_fraction = 0.05;
  CHECK(PilotPlan::from_params(p).k_train() == 10);
}

TEST_CASE("estimator arithmetic") {
  // Alternating pilots: group 0 gets {1, 3}, group 1 gets {2, 4}.
  const std::vector<double> energies{1.0, 2.0, 3.0, 4.0, 99.0};
  const HypothesisMoments m = estimate_moments(energies, PilotPlan(4));
  CHECK(m.delta0() == 2.0);
  CHECK(m.delta1() == 3.0);
  CHECK(m.var0() == 2.0);
  CHECK(m.var1() == 2.0);
  CHECK(m.source() == HypothesisMoments::Source::estimated);

  const std::vector<int> labels{0, 0, 1, 1};
  const std::vector<double> grouped{1.0, 3.0, 2.0, 4.0};
  const HypothesisMoments g = estimate_moments(grouped, labels);
  CHECK(g.delta0() == 2.0);
  CHECK(g.var1() == 2.0);
}

TEST_CASE("estimator failures") {
  const std::vector<double> flat(8, 0.7);
  try {
    estimate_moments(flat, PilotPlan(8));
    FAIL("degenerate estimate accepted");
  } catch (const EstimationError& e) {
    CHECK(e.kind() == EstimationError::Kind::degenerate_estimate);
  }
  const std::vector<double> short_frame{1.0, 2.0};
  try {
    estimate_moments(short_frame, PilotPlan(4));
    FAIL("short frame accepted");
  } catch (const EstimationError& e) {
    CHECK(e.kind() == EstimationError::Kind::insufficient_pilots);
  }
  const std::vector<int> lopsided{0, 0, 0, 1};
  const std::vector<double> e4{1.0, 2.0, 3.0, 4.0};
  CHECK_THROWS_AS(estimate_moments(e4, lopsided), EstimationError);
}

TEST_CASE("label exchange swaps the estimates") {
  Rng rng = make_stream({31});
  std::normal_distribution<double> n(5.0, 1.0);
  std::vector<double> e(40);
  for (auto& x : e) x = n(rng);
  std::vector<int> labels(40), flipped(40);
  for (int i = 0; i < 40; ++i) {
    labels[i] = i % 2;
    flipped[i] = 1 - labels[i];
  }
  const HypothesisMoments a = estimate_moments(e, labels);
  const HypothesisMoments b = estimate_moments(e, flipped);
  CHECK(a.delta0() == b.delta1());
  CHECK(a.var0() == b.var1());
}

TEST_CASE("estimates are consistent") {
  const double d0 = 2.0, d1 = 3.0, v0 = 0.25, v1 = 0.64;
  Rng rng = make_stream({32});
  std::normal_distribution<double> g0(d0, std::sqrt(v0)), g1(d1, std::sqrt(v1));

  double prev_spread = 1e300;
  for (int k : {8, 32, 128}) {
    const PilotPlan plan(k);
    double sum_d0 = 0, sum_v0 = 0, sum_v1 = 0, sq_d0 = 0;
    constexpr int reps = 1000;
    std::vector<double> e(k);
    for (int r = 0; r < reps; ++r) {
      for (int i = 0; i < k; ++i) e[i] = plan.bits()[i] ? g1(rng) : g0(rng);
      const HypothesisMoments m = estimate_moments(e, plan);
      sum_d0 += m.delta0();
      sq_d0 += (m.delta0() - d0) * (m.delta0() - d0);
      sum_v0 += m.var0();
      sum_v1 += m.var1();
    }
    CHECK(sum_d0 / reps == doctest::Approx(d0).epsilon(0.01));
    // Each group of k/2 contributes with k/2 - 1 degrees of freedom, so the
    // variance estimates are unbiased.
    CHECK(sum_v0 / reps == doctest::Approx(v0).epsilon(0.06));
    CHECK(sum_v1 / reps == doctest::Approx(v1).epsilon(0.06));
    const double spread = std::sqrt(sq_d0 / reps);
    CHECK(spread == doctest::Approx(std::sqrt(v0 / (k / 2))).epsilon(0.1));
    CHECK(spread < prev_spread);
    prev_spread = spread;
  }
}

TEST_CASE("estimated threshold") {
  const HypothesisMoments truth(1.0, 3.0, 0.25, 1.0);
  CHECK(estimated_threshold(truth) == near_optimal_threshold(truth));
  CHECK(estimated_threshold(HypothesisMoments(1.0, 3.0, 0.5, 0.5, HypothesisMoments::Source::estimated)) ==
        doctest::Approx(2.0));

  Rng rng = make_stream({33});
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double d0 = 1.0 + 5.0 * u(rng), d1 = d0 + 0.1 + 3.0 * u(rng);
    const double v0 = 0.01 + u(rng), v1 = 0.01 + u(rng);
    const HypothesisMoments m(d0, d1, v0, v1, HypothesisMoments::Source::estimated);
    const auto gap = [&](double x) { return oracle::gaussian_log_pdf_gap(x, d0, v0, d1, v1); };
    if ((gap(d0) < 0.0) == (gap(d1) < 0.0)) continue;  // no crossing between the means
    CHECK(estimated_threshold(m) == doctest::Approx(oracle::bisect_root(gap, d0, d1)).epsilon(1e-9));
  }
}

TEST_CASE("relative threshold error") {
  CHECK(relative_threshold_error(1.0, 1.0) == 0.0);
  CHECK(relative_threshold_error(1.1, 1.0) == doctest::Approx(0.1));
  CHECK(relative_threshold_error(0.9, 1.0) == doctest::Approx(0.1));
  CHECK_THROWS_AS(relative_threshold_error(1.0, 0.0), DomainError);
}
