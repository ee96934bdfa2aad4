#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "ambc/errors.hpp"
#include "commands.hpp"

using namespace ambc;
using namespace ambc::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "ambc_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(AMBC_SIM_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct Row {
  double value;
  std::string mode;
  double ber;
  double halfwidth;
};

std::vector<Row> read_rows(const std::string& csv) {
  std::vector<Row> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // provenance
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    rows.push_back({std::stod(f[1]), f[2], std::stod(f[4]), std::stod(f[5])});
  }
  return rows;
}

std::vector<std::vector<std::string>> read_cells(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    rows.push_back(f);
  }
  return rows;
}

}  // namespace

TEST_CASE("sweep grammar") {
  const SweepAxis ps = parse_sweep("ps:-10:30:5");
  CHECK(ps.variable == SweepVariable::ps_dbm);
  CHECK(ps.values == std::vector<double>{-10, -5, 0, 5, 10, 15, 20, 25, 30});
  CHECK(parse_sweep("bdpr:-30:-10:10").values == std::vector<double>{-30, -20, -10});
  CHECK(parse_sweep("ps:30:20:-5").values == std::vector<double>{30, 25, 20});
  const SweepAxis pilot = parse_sweep("pilot:0.05,0.1, 0.2");
  CHECK(pilot.variable == SweepVariable::pilot_fraction);
  CHECK(pilot.values == std::vector<double>{0.05, 0.1, 0.2});
  CHECK(parse_sweep("ps:7").values == std::vector<double>{7});
  CHECK(parse_sweep("ps:0:1:0.1").values.size() == 11);
  CHECK_THROWS_AS(parse_sweep("snr:0:1:1"), ValidationError);
  CHECK_THROWS_AS(parse_sweep("ps:0:10:0"), ValidationError);
  CHECK_THROWS_AS(parse_sweep("ps:0:10:-1"), ValidationError);
  CHECK_THROWS_AS(parse_sweep("ps:0:x:1"), ValidationError);
  CHECK_THROWS_AS(parse_sweep("ps"), ValidationError);
  CHECK(split_list(" lna , no_lna,") == std::vector<std::string>{"lna", "no_lna"});
}

TEST_CASE("scenario resolution") {
  CHECK_THROWS_AS(resolve_scenario({}), ValidationError);

  ScenarioOptions opts;
  opts.paper_defaults = true;
  opts.ps_dbm = 3.0;
  opts.n_samples = 50;
  const SystemParams p = resolve_scenario(opts);
  CHECK(p.ps_dbm == 3.0);
  CHECK(p.n_samples == 50);

  const fs::path file = scratch_dir() / "partial.json";
  std::ofstream(file) << R"({"beta3": 0.0, "k_symbols": 200})";
  opts = {};
  opts.scenario_path = file;
  CHECK_THROWS_AS(resolve_scenario(opts), ConfigError);
  opts.paper_defaults = true;
  const SystemParams overlay = resolve_scenario(opts);
  CHECK(overlay.beta3 == 0.0);
  CHECK(overlay.k_symbols == 200);
  CHECK(overlay.beta1 == paper_defaults().beta1);

  opts.scenario_path = scratch_dir() / "missing.json";
  CHECK_THROWS_AS(resolve_scenario(opts), IoError);
}

TEST_CASE("digest tracks the scenario") {
  SystemParams p = paper_defaults();
  const std::string d = scenario_digest(p);
  CHECK(d.size() == 16);
  CHECK(scenario_digest(p) == d);
  p.ps_dbm += 1.0;
  CHECK(scenario_digest(p) != d);
}

TEST_CASE("ber-sweep output is byte-identical across reruns and worker counts") {
  BerSweepOptions opts;
  opts.scenario.paper_defaults = true;
  opts.sweep = "ps:-10:30:10";
  opts.realizations = 20;
  opts.seed = 7;
  std::ostringstream log;

  opts.out = scratch_dir() / "a.csv";
  opts.workers = 1;
  cmd_ber_sweep(opts, log);
  opts.out = scratch_dir() / "b.csv";
  cmd_ber_sweep(opts, log);
  opts.out = scratch_dir() / "c.csv";
  opts.workers = 3;
  const CommandOutcome outcome = cmd_ber_sweep(opts, log);

  const std::string a = slurp(scratch_dir() / "a.csv");
  CHECK(a == slurp(scratch_dir() / "b.csv"));
  CHECK(a == slurp(scratch_dir() / "c.csv"));
  CHECK(a.rfind("# ambc-sim ", 0) == 0);
  CHECK(a.find("seed=7") != std::string::npos);
  CHECK(a.find("\nsweep_var,value,mode,threshold_policy,ber_empirical,ber_ci_halfwidth,ber_closed_form,"
               "threshold_mean,errors,bits,failures\n") != std::string::npos);
  CHECK(read_rows(a).size() == 10);
  CHECK(outcome.exit_code == kOk);
  CHECK(outcome.outputs.size() == 1);
  CHECK_FALSE(fs::exists(scratch_dir() / "c.csv.tmp"));
}

TEST_CASE("unwritable output is an I/O error") {
  BerSweepOptions opts;
  opts.scenario.paper_defaults = true;
  opts.sweep = "ps:0";
  opts.realizations = 1;
  opts.out = scratch_dir() / "no_such_dir" / "x.csv";
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_ber_sweep(opts, log), IoError);
}

TEST_CASE("pilot sweep rejects odd pilot counts before running") {
  PilotSweepOptions opts;
  opts.scenario.paper_defaults = true;
  opts.fractions = "0.05,0.1";
  opts.out = scratch_dir() / "pilot.csv";
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_pilot_sweep(opts, log), ValidationError);
  CHECK_FALSE(fs::exists(opts.out));
}

TEST_CASE("verification flags an out-of-range model by name") {
  SystemParams p = paper_defaults();
  p.ps_dbm = 1000.0;
  const auto results = run_verification(p, 1, 1);
  bool named = false;
  for (const auto& r : results) {
    if (r.name == "model_validity") named = r.status == CheckResult::Status::fail;
  }
  CHECK(named);

  VerifyOptions opts;
  opts.scenario.paper_defaults = true;
  opts.scenario.ps_dbm = 1000.0;
  std::ostringstream log;
  CHECK(cmd_verify(opts, log).exit_code == kCheckFailed);
  CHECK(log.str().find("FAIL  model_validity") != std::string::npos);
}

TEST_CASE("linear front end adds the reduction identities") {
  SystemParams p = paper_defaults();
  p.beta3 = 0.0;
  const auto results = run_verification(p, 2, 1);
  bool found = false;
  for (const auto& r : results) {
    CHECK_MESSAGE(r.status != CheckResult::Status::fail, r.name << ": " << r.detail);
    if (r.name == "beta3_zero_identities") found = r.status == CheckResult::Status::pass;
  }
  CHECK(found);
}

TEST_CASE("exit codes") {
  const fs::path out = scratch_dir() / "exit.csv";
  CHECK(run_cli("ber-sweep --paper-defaults --sweep ps:0 --realizations 2 --out " + out.string()) == 0);
  CHECK(run_cli("ber-sweep --sweep ps:0 --out " + out.string()) == 1);
  CHECK(run_cli("ber-sweep --paper-defaults --sweep ps:0:1:0 --out " + out.string()) == 1);
  CHECK(run_cli("ber-sweep --paper-defaults --modes fm --out " + out.string()) == 1);
  CHECK(run_cli("ber-sweep --paper-defaults --bogus") == 1);
  CHECK(run_cli("frobnicate") == 1);
  CHECK(run_cli("ber-sweep --paper-defaults --sweep ps:0 --realizations 1 --out /nonexistent/dir/x.csv") == 3);
  CHECK(run_cli("ber-sweep --scenario /nonexistent/scenario.json --out " + out.string()) == 3);
  CHECK(run_cli("verify --paper-defaults --ps 1000") == 2);
  CHECK(run_cli("--version") == 0);
}

TEST_CASE("example: LNA dominates at low to medium power") {
  BerSweepOptions opts;
  opts.scenario.paper_defaults = true;
  opts.sweep = "ps:-10:30:5";
  opts.modes = "lna,no_lna";
  opts.seed = 7;
  opts.out = scratch_dir() / "fig4a.csv";
  std::ostringstream log;
  cmd_ber_sweep(opts, log);
  const auto rows = read_rows(slurp(opts.out));
  REQUIRE(rows.size() == 18);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    REQUIRE(rows[i].mode == "lna");
    if (rows[i].value <= 10.0) CHECK(rows[i].ber < rows[i + 1].ber);
  }
}

TEST_CASE("example: BER does not rise with BDPR") {
  BerSweepOptions opts;
  opts.scenario.paper_defaults = true;
  opts.scenario.ps_dbm = 5.0;
  opts.sweep = "bdpr:-30:-10:10";
  opts.modes = "lna";
  opts.seed = 7;
  opts.out = scratch_dir() / "fig4b.csv";
  std::ostringstream log;
  cmd_ber_sweep(opts, log);
  const auto rows = read_rows(slurp(opts.out));
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].ber <= rows[i - 1].ber + rows[i].halfwidth + rows[i - 1].halfwidth);
  }
}

TEST_CASE("example: pilot overhead") {
  PilotSweepOptions opts;
  opts.scenario.paper_defaults = true;
  opts.scenario.k_symbols = 200;
  opts.fractions = "0.05,0.2,0.4";
  opts.seed = 7;
  opts.out = scratch_dir() / "fig5.csv";
  std::ostringstream log;
  cmd_pilot_sweep(opts, log);
  const auto rows = read_cells(slurp(opts.out));
  REQUIRE(rows.size() == 3);
  const double m5 = std::stod(rows[0][3]);
  const double m20 = std::stod(rows[1][3]);
  const double m40 = std::stod(rows[2][3]);
  CHECK(m5 > m20);
  CHECK_MESSAGE((m20 - m40) / m20 < 0.25, "20% -> 40% relative improvement " << (m20 - m40) / m20);
}
