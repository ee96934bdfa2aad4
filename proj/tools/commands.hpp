#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ambc/config.hpp"
#include "ambc/montecarlo.hpp"

namespace ambc::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kCheckFailed = 2, kIo = 3 };

struct CommandOutcome {
  std::string command;
  std::string input_digest;  ///< SHA-256 (hex) of scenario + result-affecting flags + seed
  std::vector<std::filesystem::path> outputs;
  double wall_seconds = 0.0;
  long long failures = 0;
  int exit_code = kOk;
};

/// Where the scenario comes from and which fields the command line overrides.
struct ScenarioOptions {
  std::optional<std::filesystem::path> scenario_path;
  bool paper_defaults = false;
  std::optional<double> ps_dbm;
  std::optional<int> n_samples;
  std::optional<int> k_symbols;
  std::optional<double> pilot_fraction;
};

SystemParams resolve_scenario(const ScenarioOptions& opts);

struct SweepAxis {
  SweepVariable variable = SweepVariable::ps_dbm;
  std::vector<double> values;
};

/// `var:start:stop:step` (inclusive stop) or `var:v1,v2,...` with var one of
/// ps, bdpr, pilot.
SweepAxis parse_sweep(std::string_view text);

/// Comma-separated list, e.g. "lna,no_lna".
std::vector<std::string> split_list(std::string_view text);

struct BerSweepOptions {
  ScenarioOptions scenario;
  std::string sweep = "ps:-10:30:5";
  std::string modes = "lna,no_lna";
  std::string threshold_policies = "closed_form_true";
  std::string averaging = "fading";
  std::optional<double> bdpr_db;
  int realizations = 200;
  int frames = 1;
  std::uint64_t seed = 1;
  int workers = 1;
  std::filesystem::path out = "ber_sweep.csv";
};

struct PilotSweepOptions {
  ScenarioOptions scenario;
  std::string fractions = "0.05,0.1,0.2,0.4";
  std::string mode = "lna";
  std::string averaging = "fading";
  int frames = 500;
  std::uint64_t seed = 1;
  int workers = 1;
  std::filesystem::path out = "pilot_sweep.csv";
};

struct VerifyOptions {
  ScenarioOptions scenario;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct CheckResult {
  std::string name;
  enum class Status { pass, fail, skip } status = Status::pass;
  std::string detail;
};

/// The full invariant suite against one scenario.
std::vector<CheckResult> run_verification(const SystemParams& params, std::uint64_t seed, int workers);

std::string scenario_digest(const SystemParams& params);

/// CSV text for BER points, including the provenance comment line.
std::string ber_csv(const std::vector<BerPoint>& points, const SystemParams& params, std::string_view averaging,
                    int realizations, int frames, std::optional<double> bdpr_db = std::nullopt);
std::string pilot_csv(const std::vector<PilotPoint>& points, const SystemParams& params, std::string_view mode,
                      std::string_view averaging, std::uint64_t seed);

/// Writes to a sibling temporary file and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

CommandOutcome cmd_ber_sweep(const BerSweepOptions& opts, std::ostream& log);
CommandOutcome cmd_pilot_sweep(const PilotSweepOptions& opts, std::ostream& log);
CommandOutcome cmd_verify(const VerifyOptions& opts, std::ostream& log);

}  // namespace ambc::cli
