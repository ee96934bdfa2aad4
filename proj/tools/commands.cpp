#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <system_error>

#include <fmt/format.h>
#include <openssl/sha.h>

#include "ambc/analysis.hpp"
#include "ambc/errors.hpp"
#include "ambc/estimation.hpp"
#include "ambc/front_end.hpp"
#include "ambc/oracles/moment_oracle.hpp"
#include "ambc/oracles/q_quadrature.hpp"
#include "ambc/oracles/threshold_oracle.hpp"
#include "ambc/units.hpp"

#ifndef AMBC_VERSION
#define AMBC_VERSION "0.0.0"
#endif

namespace ambc::cli {
namespace {

using Clock = std::chrono::steady_clock;

double parse_number(std::string_view text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ValidationError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  std::string hex;
  hex.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char c : digest) hex += fmt::format("{:02x}", c);
  return hex;
}

std::string format_value(double v) { return fmt::format("{:.10g}", v); }

std::string provenance_line(std::string_view command, const SystemParams& params, std::uint64_t seed,
                            std::string_view extra) {
  return fmt::format("# ambc-sim {} command={} scenario_digest={} seed={} {}\n", AMBC_VERSION, command,
                     scenario_digest(params), seed, extra);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Check helpers ---------------------------------------------------------------

CheckResult pass(std::string name, std::string detail) {
  return {std::move(name), CheckResult::Status::pass, std::move(detail)};
}

CheckResult verdict(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? CheckResult::Status::pass : CheckResult::Status::fail, std::move(detail)};
}

double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), std::numeric_limits<double>::min());
}

CheckResult check_moment_coefficients() {
  using oracle::Exponents;
  const auto polys = oracle::derive_energy_moments();
  // Exponents of (beta1, beta3, P, N_aw, Z).
  const std::vector<std::pair<Exponents, long long>> variance = {
      {{4, 0, 2, 0, 0}, 1},  {{3, 1, 3, 0, 0}, 16}, {{2, 2, 4, 0, 0}, 116},
      {{1, 3, 5, 0, 0}, 432}, {{0, 4, 6, 0, 0}, 684}, {{2, 0, 1, 1, 0}, 2},
      {{1, 1, 2, 1, 0}, 8},  {{0, 2, 3, 1, 0}, 12},  {{0, 0, 0, 2, 0}, 1}};
  const std::vector<std::pair<Exponents, long long>> mean = {
      {{2, 0, 1, 0, 0}, 1}, {{0, 2, 3, 0, 0}, 6}, {{1, 1, 2, 0, 0}, 4}, {{0, 0, 0, 1, 0}, 1}};
  bool ok = polys.sample_variance.terms().size() == variance.size() && polys.mean.terms().size() == mean.size();
  for (const auto& [e, c] : variance) ok = ok && polys.sample_variance.coefficient(e) == c;
  for (const auto& [e, c] : mean) ok = ok && polys.mean.coefficient(e) == c;
  return verdict("moment_coefficients", ok,
                 fmt::format("variance polynomial has {} terms, mean polynomial {} terms",
                             polys.sample_variance.terms().size(), polys.mean.terms().size()));
}

CheckResult check_moments_symbolic(std::uint64_t seed) {
  Rng rng = make_stream({seed, static_cast<std::uint64_t>(StreamTag::auxiliary), 1});
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double b1 = 0.5 + 100.0 * u(rng);
    const double b3 = -1e4 + 2e4 * u(rng);
    const double p = std::pow(10.0, -14.0 + 10.0 * u(rng));
    const double nw = std::pow(10.0, -14.0 + 8.0 * u(rng));
    const int n = 1 + static_cast<int>(200.0 * u(rng));
    const auto closed = lna_moments(p, nw, {b1, b3}, n);
    const auto sym = oracle::energy_moments(b1, b3, p, nw, n);
    worst = std::max({worst, rel_err(closed.mean, sym.mean), rel_err(closed.variance, sym.variance)});
  }
  return verdict("moments_vs_symbolic", worst <= 1e-12, fmt::format("max relative error {:.3e} (bound 1e-12)", worst));
}

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;
  long long count = 0;
};

// Welford over symbol energies, generated in bounded-size chunks.
SampleMoments simulate_energy_moments(const SystemParams& params, const ChannelRealization& real, Mode mode,
                                      Hypothesis h, long long total_samples, Rng& rng) {
  const int n = params.n_samples;
  const long long symbols = std::max<long long>(2, total_samples / n);
  constexpr long long kChunk = 2000;
  SampleMoments acc;
  double m2 = 0.0;
  for (long long done = 0; done < symbols; done += kChunk) {
    const auto count = static_cast<std::size_t>(std::min(kChunk, symbols - done));
    const std::vector<int> bits(count, tag_bit(h));
    const SymbolFrame frame = generate_frame(params, real, bits, rng, mode);
    for (double g : frame.energies) {
      ++acc.count;
      const double delta = g - acc.mean;
      acc.mean += delta / static_cast<double>(acc.count);
      m2 += delta * (g - acc.mean);
    }
  }
  acc.variance = m2 / static_cast<double>(acc.count - 1);
  return acc;
}

CheckResult check_moments_monte_carlo(const SystemParams& params, std::uint64_t seed) {
  const ChannelRealization real = nominal_channels(params);
  Rng rng = make_stream({seed, static_cast<std::uint64_t>(StreamTag::auxiliary), 2});
  double worst_mean = 0.0, worst_var = 0.0;
  for (Mode mode : {Mode::lna, Mode::no_lna}) {
    const HypothesisMoments truth = true_moments(params, real, mode);
    for (Hypothesis h : {Hypothesis::h0, Hypothesis::h1}) {
      const SampleMoments sim = simulate_energy_moments(params, real, mode, h, 10'000'000, rng);
      worst_mean = std::max(worst_mean, rel_err(sim.mean, truth.mean(h)));
      worst_var = std::max(worst_var, rel_err(sim.variance, truth.variance(h)));
    }
  }
  return verdict("moments_vs_monte_carlo", worst_mean <= 0.01 && worst_var <= 0.03,
                 fmt::format("max relative error mean {:.3e} (bound 1e-2), variance {:.3e} (bound 3e-2)", worst_mean,
                             worst_var));
}

CheckResult check_nolna_reduction(const SystemParams& params) {
  const ChannelRealization real = nominal_channels(params);
  bool ok = true;
  for (Hypothesis h : {Hypothesis::h0, Hypothesis::h1}) {
    const double p = h == Hypothesis::h0 ? real.p0() : real.p1();
    const double nw = nolna_noise_power(params, real.htr_power(), h);
    const auto lin = nolna_moments(p, nw, params.n_samples);
    const auto red = lna_moments(p, nw, {1.0, 0.0}, params.n_samples);
    ok = ok && lin.mean == red.mean && lin.variance == red.variance;
  }
  return verdict("nolna_equals_linear_lna", ok, "linear receiver moments vs LNA moments with beta1=1, beta3=0");
}

double bisection_threshold(const HypothesisMoments& m) {
  const double lo = std::min(m.delta0(), m.delta1());
  const double hi = std::max(m.delta0(), m.delta1());
  return oracle::bisect_root(
      [&m](double x) { return oracle::gaussian_log_pdf_gap(x, m.delta0(), m.var0(), m.delta1(), m.var1()); }, lo, hi);
}

double grid_min_ber(const HypothesisMoments& m) {
  const double s_min = std::sqrt(std::min(m.var0(), m.var1()));
  const double s_max = std::sqrt(std::max(m.var0(), m.var1()));
  const double lo = std::min(m.delta0(), m.delta1()) - 3.0 * s_min;
  const double hi = std::max(m.delta0(), m.delta1()) + 3.0 * s_max;
  return oracle::grid_minimize([&m](double t) { return ber_closed_form(m, t); }, lo, hi, 10'000).value;
}

CheckResult check_threshold(const SystemParams& params, std::uint64_t seed) {
  Rng rng = make_stream({seed, static_cast<std::uint64_t>(StreamTag::auxiliary), 3});
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_excess = 0.0, worst_residual = 0.0;
  int cases = 0;
  const auto run = [&](const HypothesisMoments& m) {
    const double t = near_optimal_threshold(m);
    worst_excess = std::max(worst_excess, ber_closed_form(m, t) - grid_min_ber(m));
    worst_residual = std::max(worst_residual, pdf_equality_residual(m, t));
    ++cases;
  };
  for (Mode mode : {Mode::lna, Mode::no_lna}) {
    const HypothesisMoments m = true_moments(params, nominal_channels(params), mode);
    if (m.delta0() != m.delta1()) run(m);
  }
  for (int i = 0; i < 200; ++i) {
    const double d0 = 1.0 + 9.0 * u(rng);
    const double d1 = 1.0 + 9.0 * u(rng);
    const double s0 = 0.05 * d0 + 0.5 * d0 * u(rng);
    const double s1 = 0.05 * d1 + 0.5 * d1 * u(rng);
    run(HypothesisMoments(d0, d1, s0 * s0, s1 * s1));
  }
  return verdict("threshold_optimality", worst_excess <= 1e-6 && worst_residual <= 1e-9,
                 fmt::format("{} cases: max BER excess over grid minimum {:.3e} (bound 1e-6), max PDF residual "
                             "{:.3e} (bound 1e-9)",
                             cases, worst_excess, worst_residual));
}

CheckResult check_threshold_bisection(const SystemParams& params) {
  double worst = 0.0;
  for (Mode mode : {Mode::lna, Mode::no_lna}) {
    const HypothesisMoments m = true_moments(params, nominal_channels(params), mode);
    if (m.delta0() == m.delta1()) continue;
    worst = std::max(worst, rel_err(near_optimal_threshold(m), bisection_threshold(m)));
  }
  return verdict("threshold_vs_bisection", worst <= 1e-9, fmt::format("max relative gap {:.3e} (bound 1e-9)", worst));
}

CheckResult check_deflection(const SystemParams& params) {
  const ChannelRealization base = nominal_channels(params);
  const double htr = base.htr_power();
  double worst_identity = 0.0;
  bool ordering = true;
  for (double ps_dbm = -30.0; ps_dbm <= 30.0; ps_dbm += 5.0) {
    const ChannelRealization real = base.with_source_power(dbm_to_watts(ps_dbm));
    const double p0 = real.p0();
    const double p1 = real.p1();
    if (p1 != p0) ordering = ordering && deflection_lna_approx(p0, p1, params, htr) > deflection_no_lna(p0, p1, params, htr);

    const double n_aw = deflection_noise(params, htr).n_aw;
    const auto m0 = lna_moments(p0, n_aw, {params.beta1, params.beta3}, params.n_samples);
    const auto m1 = lna_moments(p1, n_aw, {params.beta1, params.beta3}, params.n_samples);
    const double composed = (m1.mean - m0.mean) * (m1.mean - m0.mean) / m0.variance;
    worst_identity = std::max(worst_identity, rel_err(deflection_lna_full(p0, p1, params, htr), composed));
  }
  const bool noise_order = deflection_noise(params, htr).n_aw / (params.beta1 * params.beta1) <
                           deflection_noise(params, htr).n_w;
  return verdict("deflection_identities", worst_identity <= 1e-12 && (ordering || !noise_order),
                 fmt::format("full DC vs composed moments max relative gap {:.3e} (bound 1e-12); LNA DC exceeds "
                             "no-LNA DC at every Ps in [-30, 30] dBm: {}",
                             worst_identity, ordering ? "yes" : "no"));
}

CheckResult check_deflection_regimes(const SystemParams& params) {
  const ChannelRealization base = nominal_channels(params);
  const double htr = base.htr_power();
  double worst_small = 0.0;
  for (double ps_dbm = -30.0; ps_dbm <= 0.0; ps_dbm += 5.0) {
    const ChannelRealization real = base.with_source_power(dbm_to_watts(ps_dbm));
    if (real.p0() == real.p1()) continue;
    const double full = deflection_lna_full(real.p0(), real.p1(), params, htr);
    worst_small = std::max(worst_small, rel_err(deflection_lna_approx(real.p0(), real.p1(), params, htr), full));
  }
  const DeflectionNoise noise = deflection_noise(params, htr);
  const double floor = std::max(noise.n_w, noise.n_aw / (params.beta1 * params.beta1));
  const double p0 = 1e6 * floor;
  const double p1 = p0 * base.p1() / base.p0();
  const double ratio = deflection_lna_approx(p0, p1, params, htr) / deflection_no_lna(p0, p1, params, htr);
  return verdict("deflection_regimes", worst_small <= 0.01 && std::abs(ratio - 1.0) <= 0.01,
                 fmt::format("approx vs full at Ps <= 0 dBm max relative gap {:.3e} (bound 1e-2); approx/no-LNA "
                             "ratio at P0 = 1e6 x noise {:.6f}",
                             worst_small, ratio));
}

CheckResult check_q_function() {
  double worst = 0.0;
  for (double x = -8.0; x <= 8.0; x += 0.25) {
    worst = std::max(worst, rel_err(q_function(x), oracle::q_by_quadrature(x)));
  }
  return verdict("q_function_vs_quadrature", worst <= 1e-12,
                 fmt::format("max relative error over [-8, 8]: {:.3e} (bound 1e-12)", worst));
}

CheckResult check_ber_simulation(const SystemParams& params, std::uint64_t seed, int workers) {
  if (params.n_samples < 50) {
    return {"ber_vs_simulation", CheckResult::Status::skip, "N < 50: Gaussian approximation not expected to hold"};
  }
  SweepSpec spec;
  spec.scenario = params;
  spec.variable = SweepVariable::ps_dbm;
  spec.values = {params.ps_dbm};
  spec.modes = {Mode::lna};
  spec.averaging = Averaging::nominal;
  spec.n_realizations = 1;
  spec.n_frames = std::max(1, 20'000 / params.k_symbols);
  spec.master_seed = seed;
  const BerPoint pt = run_sweep(spec, workers).front();
  const double se = std::sqrt(pt.ber_closed_form * (1.0 - pt.ber_closed_form) / static_cast<double>(pt.bits));
  const double z = se > 0.0 ? std::abs(pt.ber - pt.ber_closed_form) / se : 0.0;
  if (pt.errors < 10) {
    return {"ber_vs_simulation", CheckResult::Status::skip,
            fmt::format("only {} errors observed; comparison not meaningful", pt.errors)};
  }
  return verdict("ber_vs_simulation", z <= 3.0,
                 fmt::format("empirical {:.5f} vs closed form {:.5f} over {} bits: {:.2f} standard errors (bound 3)",
                             pt.ber, pt.ber_closed_form, pt.bits, z));
}

CheckResult check_beta3_zero(const SystemParams& params) {
  const ChannelRealization real = nominal_channels(params);
  const double htr = real.htr_power();
  const double full = deflection_lna_full(real.p0(), real.p1(), params, htr);
  const double approx = deflection_lna_approx(real.p0(), real.p1(), params, htr);
  const double nw = lna_noise_power(params, htr, Hypothesis::h0);
  const auto m = lna_moments(real.p0(), params, htr, Hypothesis::h0);
  const double b1sq = params.beta1 * params.beta1;
  const double mean_gap = rel_err(m.mean, b1sq * real.p0() + nw);
  const double var_gap = rel_err(m.variance, (b1sq * real.p0() + nw) * (b1sq * real.p0() + nw) / params.n_samples);
  const double dc_gap = rel_err(full, approx);
  return verdict("beta3_zero_identities", mean_gap <= 1e-14 && var_gap <= 1e-14 && dc_gap <= 1e-14,
                 fmt::format("relative gaps: mean {:.1e}, variance {:.1e}, DC full vs approx {:.1e} (bound 1e-14)",
                             mean_gap, var_gap, dc_gap));
}

}  // namespace

// Scenario and parsing ----------------------------------------------------------

SystemParams resolve_scenario(const ScenarioOptions& opts) {
  SystemParams params;
  if (opts.scenario_path) {
    std::ifstream in(*opts.scenario_path);
    if (!in) throw IoError("cannot open scenario file " + opts.scenario_path->string());
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError({}, "scenario file is not a valid document: " + std::string(e.what()));
    }
    if (opts.paper_defaults && doc.is_object() && !doc.contains("paper_defaults")) doc["paper_defaults"] = true;
    params = load_scenario(doc);
  } else if (opts.paper_defaults) {
    params = paper_defaults();
  } else {
    throw ValidationError("a scenario is required: pass --scenario <path> or --paper-defaults");
  }
  if (opts.ps_dbm) params = with_override(params, "ps_dbm", *opts.ps_dbm);
  if (opts.n_samples) params = with_override(params, "n_samples", *opts.n_samples);
  if (opts.k_symbols) params = with_override(params, "k_symbols", *opts.k_symbols);
  if (opts.pilot_fraction) params = with_override(params, "pilot_fraction", *opts.pilot_fraction);
  return params;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    std::string item(text.substr(start, end - start));
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

SweepAxis parse_sweep(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("sweep must look like var:start:stop:step or var:v1,v2,...");
  }
  const std::string_view var = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);

  SweepAxis axis;
  if (var == "ps") {
    axis.variable = SweepVariable::ps_dbm;
  } else if (var == "bdpr") {
    axis.variable = SweepVariable::bdpr_db;
  } else if (var == "pilot") {
    axis.variable = SweepVariable::pilot_fraction;
  } else {
    throw ValidationError("unknown sweep variable '" + std::string(var) + "' (expected ps, bdpr or pilot)");
  }

  if (rest.find(',') != std::string_view::npos || rest.find(':') == std::string_view::npos) {
    for (const auto& item : split_list(rest)) axis.values.push_back(parse_number(item));
  } else {
    const auto parts = [&] {
      std::vector<std::string_view> p;
      std::size_t s = 0;
      for (std::size_t c = rest.find(':'); c != std::string_view::npos; c = rest.find(':', s)) {
        p.push_back(rest.substr(s, c - s));
        s = c + 1;
      }
      p.push_back(rest.substr(s));
      return p;
    }();
    if (parts.size() != 3) throw ValidationError("range sweep needs start:stop:step");
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double step = parse_number(parts[2]);
    if (step == 0.0 || (stop - start) / step < 0.0) {
      throw ValidationError("sweep step must be nonzero and point from start towards stop");
    }
    const double slack = 1e-9 * std::abs(step);
    for (int i = 0;; ++i) {
      const double v = start + i * step;
      if ((step > 0.0 && v > stop + slack) || (step < 0.0 && v < stop - slack)) break;
      axis.values.push_back(v);
      if (i > 100'000) throw ValidationError("sweep has too many points");
    }
  }
  if (axis.values.empty()) throw ValidationError("sweep has no values");
  return axis;
}

std::string scenario_digest(const SystemParams& params) {
  return sha256_hex(to_json(params).dump()).substr(0, 16);
}

std::string ber_csv(const std::vector<BerPoint>& points, const SystemParams& params, std::string_view averaging,
                    int realizations, int frames, std::optional<double> bdpr_db) {
  const std::uint64_t seed = points.empty() ? 0 : points.front().master_seed;
  std::string extra = fmt::format("averaging={} realizations={} frames={}", averaging, realizations, frames);
  if (bdpr_db) extra += " bdpr_db=" + format_value(*bdpr_db);
  std::string out = provenance_line("ber-sweep", params, seed, extra);
  out += "sweep_var,value,mode,threshold_policy,ber_empirical,ber_ci_halfwidth,ber_closed_form,threshold_mean,errors,"
         "bits,failures\n";
  for (const auto& p : points) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", to_string(p.variable), format_value(p.value),
                       to_string(p.mode), to_string(p.policy), format_value(p.ber), format_value(p.ci.halfwidth()),
                       format_value(p.ber_closed_form), format_value(p.threshold_mean), p.errors, p.bits, p.failures);
  }
  return out;
}

std::string pilot_csv(const std::vector<PilotPoint>& points, const SystemParams& params, std::string_view mode,
                      std::string_view averaging, std::uint64_t seed) {
  std::string out =
      provenance_line("pilot-sweep", params, seed, fmt::format("mode={} averaging={}", mode, averaging));
  out += "pilot_fraction,k_train,R_mean,R_median,R_p90,frames\n";
  for (const auto& p : points) {
    out += fmt::format("{},{},{},{},{},{}\n", format_value(p.fraction), p.k_train, format_value(p.r_mean),
                       format_value(p.r_median), format_value(p.r_p90), p.frames);
  }
  return out;
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

// Commands -------------------------------------------------------------------------

CommandOutcome cmd_ber_sweep(const BerSweepOptions& opts, std::ostream& log) {
  const auto start = Clock::now();
  const SystemParams params = resolve_scenario(opts.scenario);
  const SweepAxis axis = parse_sweep(opts.sweep);

  SweepSpec spec;
  spec.scenario = params;
  spec.variable = axis.variable;
  spec.values = axis.values;
  spec.modes.clear();
  for (const auto& m : split_list(opts.modes)) spec.modes.push_back(parse_mode(m));
  spec.policies.clear();
  for (const auto& p : split_list(opts.threshold_policies)) spec.policies.push_back(parse_threshold_policy(p));
  spec.averaging = parse_averaging(opts.averaging);
  spec.fixed_bdpr_db = opts.bdpr_db;
  spec.n_realizations = opts.realizations;
  spec.n_frames = opts.frames;
  spec.master_seed = opts.seed;
  spec.validate();

  const std::vector<BerPoint> points = run_sweep(spec, opts.workers);
  write_atomically(opts.out, ber_csv(points, params, opts.averaging, opts.realizations, opts.frames, opts.bdpr_db));

  CommandOutcome outcome;
  outcome.command = "ber-sweep";
  outcome.input_digest =
      sha256_hex(fmt::format("{}|ber-sweep|{}|{}|{}|{}|{}|{}|{}|{}", to_json(params).dump(), opts.sweep, opts.modes,
                             opts.threshold_policies, opts.averaging, opts.realizations, opts.frames, opts.seed,
                             opts.bdpr_db ? format_value(*opts.bdpr_db) : "none"));
  outcome.outputs = {opts.out};
  for (const auto& p : points) {
    outcome.failures += p.failures;
    if (!p.reliable) {
      log << fmt::format("note: {}={} {} {} has {} errors (<10), estimate unreliable\n", to_string(p.variable),
                         format_value(p.value), to_string(p.mode), to_string(p.policy), p.errors);
    }
    if (p.failures > 0) {
      log << fmt::format("note: {}={} {} {} had {} failed frames\n", to_string(p.variable), format_value(p.value),
                         to_string(p.mode), to_string(p.policy), p.failures);
    }
  }
  outcome.wall_seconds = seconds_since(start);
  return outcome;
}

CommandOutcome cmd_pilot_sweep(const PilotSweepOptions& opts, std::ostream& log) {
  const auto start = Clock::now();
  const SystemParams params = resolve_scenario(opts.scenario);

  PilotSweepSpec spec;
  spec.scenario = params;
  for (const auto& f : split_list(opts.fractions)) spec.fractions.push_back(parse_number(f));
  spec.mode = parse_mode(opts.mode);
  spec.averaging = parse_averaging(opts.averaging);
  spec.n_frames = opts.frames;
  spec.master_seed = opts.seed;
  spec.validate();

  const std::vector<PilotPoint> points = run_pilot_sweep(spec, opts.workers);
  write_atomically(opts.out, pilot_csv(points, params, opts.mode, opts.averaging, opts.seed));

  CommandOutcome outcome;
  outcome.command = "pilot-sweep";
  outcome.input_digest = sha256_hex(fmt::format("{}|pilot-sweep|{}|{}|{}|{}|{}", to_json(params).dump(),
                                                opts.fractions, opts.mode, opts.averaging, opts.frames, opts.seed));
  outcome.outputs = {opts.out};
  for (const auto& p : points) {
    outcome.failures += p.failures;
    if (p.failures > 0) {
      log << fmt::format("note: pilot fraction {} had {} frames without a usable estimate\n",
                         format_value(p.fraction), p.failures);
    }
  }
  outcome.wall_seconds = seconds_since(start);
  return outcome;
}

std::vector<CheckResult> run_verification(const SystemParams& params, std::uint64_t seed, int workers) {
  std::vector<CheckResult> results;
  results.push_back(check_moment_coefficients());
  results.push_back(check_moments_symbolic(seed));
  results.push_back(check_q_function());

  // Everything below needs finite, positive moments at this scenario.
  try {
    for (Mode mode : {Mode::lna, Mode::no_lna}) (void)true_moments(params, nominal_channels(params), mode);
    results.push_back(pass("model_validity", "closed-form moments are finite and positive"));
  } catch (const ModelValidityError& e) {
    results.push_back({"model_validity", CheckResult::Status::fail, e.what()});
    return results;
  }

  results.push_back(check_nolna_reduction(params));
  results.push_back(check_moments_monte_carlo(params, seed));
  results.push_back(check_threshold(params, seed));
  results.push_back(check_threshold_bisection(params));
  results.push_back(check_deflection(params));
  results.push_back(check_deflection_regimes(params));
  results.push_back(check_ber_simulation(params, seed, workers));
  if (params.beta3 == 0.0) results.push_back(check_beta3_zero(params));
  return results;
}

CommandOutcome cmd_verify(const VerifyOptions& opts, std::ostream& log) {
  const auto start = Clock::now();
  const SystemParams params = resolve_scenario(opts.scenario);
  const auto results = run_verification(params, opts.seed, opts.workers);

  CommandOutcome outcome;
  outcome.command = "verify";
  outcome.input_digest = sha256_hex(fmt::format("{}|verify|{}", to_json(params).dump(), opts.seed));
  for (const auto& r : results) {
    const char* tag = r.status == CheckResult::Status::pass ? "PASS" : r.status == CheckResult::Status::fail ? "FAIL" : "SKIP";
    log << fmt::format("{:<4}  {:<26}  {}\n", tag, r.name, r.detail);
    if (r.status == CheckResult::Status::fail) ++outcome.failures;
  }
  outcome.exit_code = outcome.failures == 0 ? kOk : kCheckFailed;
  outcome.wall_seconds = seconds_since(start);
  return outcome;
}

}  // namespace ambc::cli
