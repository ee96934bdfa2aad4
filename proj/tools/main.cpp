#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ambc/errors.hpp"
#include "commands.hpp"

namespace {

using namespace ambc::cli;

void add_scenario_flags(CLI::App& cmd, ScenarioOptions& s) {
  cmd.add_option("--scenario", s.scenario_path, "scenario file (JSON)");
  cmd.add_flag("--paper-defaults", s.paper_defaults, "start from the built-in reference scenario");
  cmd.add_option("--ps", s.ps_dbm, "override source power (dBm)");
  cmd.add_option("--n-samples", s.n_samples, "override samples per symbol N");
  cmd.add_option("--k-symbols", s.k_symbols, "override symbols per frame K");
  cmd.add_option("--pilot-fraction", s.pilot_fraction, "override pilot fraction");
}

void report(const CommandOutcome& o) {
  std::cerr << fmt::format("{}: {} failed frames/checks, {:.2f} s, input digest {}\n", o.command, o.failures,
                           o.wall_seconds, o.input_digest.substr(0, 16));
  for (const auto& p : o.outputs) std::cerr << "wrote " << p.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ambient backscatter energy-detector simulator"};
  app.set_version_flag("--version", AMBC_VERSION);
  app.require_subcommand(1);

  BerSweepOptions ber;
  auto* ber_cmd = app.add_subcommand("ber-sweep", "bit error rate versus Ps, BDPR or pilot fraction");
  add_scenario_flags(*ber_cmd, ber.scenario);
  ber_cmd->add_option("--sweep", ber.sweep, "var:start:stop:step or var:v1,v2 (var = ps, bdpr, pilot)")
      ->capture_default_str();
  ber_cmd->add_option("--modes", ber.modes, "lna, no_lna or both")->capture_default_str();
  ber_cmd->add_option("--threshold-policy", ber.threshold_policies,
                      "closed_form_true, estimated, numeric_oracle (comma separated)")
      ->capture_default_str();
  ber_cmd->add_option("--averaging", ber.averaging, "fading, conditional or nominal")->capture_default_str();
  ber_cmd->add_option("--bdpr", ber.bdpr_db, "hold every realization at this BDPR (dB)");
  ber_cmd->add_option("--realizations", ber.realizations, "channel realizations per point")->capture_default_str();
  ber_cmd->add_option("--frames", ber.frames, "frames per realization")->capture_default_str();
  ber_cmd->add_option("--seed", ber.seed)->capture_default_str();
  ber_cmd->add_option("--workers", ber.workers)->capture_default_str();
  ber_cmd->add_option("--out", ber.out, "output CSV")->capture_default_str();

  PilotSweepOptions pilot;
  auto* pilot_cmd = app.add_subcommand("pilot-sweep", "threshold estimation error versus pilot fraction");
  add_scenario_flags(*pilot_cmd, pilot.scenario);
  pilot_cmd->add_option("--fractions", pilot.fractions, "comma separated pilot fractions")->capture_default_str();
  pilot_cmd->add_option("--modes", pilot.mode, "receiver mode")->capture_default_str();
  pilot_cmd->add_option("--averaging", pilot.averaging, "fading, conditional or nominal")->capture_default_str();
  pilot_cmd->add_option("--frames", pilot.frames)->capture_default_str();
  pilot_cmd->add_option("--seed", pilot.seed)->capture_default_str();
  pilot_cmd->add_option("--workers", pilot.workers)->capture_default_str();
  pilot_cmd->add_option("--out", pilot.out, "output CSV")->capture_default_str();

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "run the analytic and statistical self-checks");
  add_scenario_flags(*verify_cmd, verify.scenario);
  verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
  verify_cmd->add_option("--workers", verify.workers)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    CommandOutcome outcome;
    if (*ber_cmd) {
      outcome = cmd_ber_sweep(ber, std::cerr);
    } else if (*pilot_cmd) {
      outcome = cmd_pilot_sweep(pilot, std::cerr);
    } else {
      outcome = cmd_verify(verify, std::cout);
    }
    report(outcome);
    return outcome.exit_code;
  } catch (const ambc::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ambc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
}
