#include <doctest.h>

#include <cmath>
#include <limits>

#include "ambc/config.hpp"
#include "ambc/errors.hpp"
#include "ambc/units.hpp"

using namespace ambc;

TEST_CASE("dBm to watts") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(dbm_to_watts(-100.0) == doctest::Approx(1e-13).epsilon(1e-15));
  CHECK_THROWS_AS(dbm_to_watts(std::numeric_limits<double>::infinity()), ValidationError);
  CHECK_THROWS_AS(dbm_to_watts(std::nan("")), ValidationError);
  CHECK_THROWS_AS(watts_to_dbm(0.0), ValidationError);
  CHECK_THROWS_AS(watts_to_dbm(-1.0), ValidationError);
}

TEST_CASE("dB gains") {
  CHECK(db_to_power_gain(0.0) == 1.0);
  CHECK(db_to_power_gain(10.0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(db_to_power_gain(-1.1) == doctest::Approx(0.7762471166286917).epsilon(1e-14));
  CHECK(db_to_amplitude_gain(-1.1) * db_to_amplitude_gain(-1.1) == doctest::Approx(db_to_power_gain(-1.1)));
}

TEST_CASE("dBm round trip and monotonicity") {
  double prev = -std::numeric_limits<double>::infinity();
  for (double p = -200.0; p <= 100.0; p += 0.37) {
    const double back = watts_to_dbm(dbm_to_watts(p));
    CHECK(std::abs(back - p) <= 1e-12 * std::max(1.0, std::abs(p)));
    const double g = db_to_power_gain(p);
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("defaults document") {
  const SystemParams p = load_scenario(nlohmann::json{{"paper_defaults", true}});
  CHECK(p == paper_defaults());
  CHECK(p.beta1 == 56.23);
  CHECK(p.beta3 == -7497.33);
  CHECK(p.alpha_db == -1.1);
  CHECK(p.n_ar_dbm == -100.0);
  CHECK(p.n_at_dbm == -100.0);
  CHECK(p.n_cov_dbm == -70.0);
  CHECK(p.v0 == 4.5);
  CHECK(p.vst == 4.5);
  CHECK(p.vtr == 2.5);
  CHECK(p.r0 == 50.0);
  CHECK(p.rst == 50.0);
  CHECK(p.rtr == 10.0);
  CHECK(p.k_symbols == 100);
}

TEST_CASE("pilot count must be even") {
  nlohmann::json doc{{"paper_defaults", true}, {"k_symbols", 100}, {"pilot_fraction", 0.3}};
  CHECK(load_scenario(doc).pilot_count() == 30);

  doc["pilot_fraction"] = 0.33;
  try {
    load_scenario(doc);
    FAIL("odd pilot count accepted");
  } catch (const ConfigError& e) {
    REQUIRE(e.fields().size() == 1);
    CHECK(e.fields()[0] == "pilot_fraction");
  }
}

TEST_CASE("missing keys are all listed") {
  try {
    load_scenario(nlohmann::json::object());
    FAIL("empty document accepted");
  } catch (const ConfigError& e) {
    CHECK(e.fields().size() == 16);
  }
  nlohmann::json doc = to_json(paper_defaults());
  doc.erase("beta3");
  doc.erase("rtr");
  try {
    load_scenario(doc);
    FAIL("incomplete document accepted");
  } catch (const ConfigError& e) {
    CHECK(e.fields() == std::vector<std::string>{"beta3", "rtr"});
  }
}

TEST_CASE("document validation") {
  nlohmann::json doc{{"paper_defaults", true}};
  CHECK_THROWS_AS(load_scenario(nlohmann::json::array()), ConfigError);

  doc["bogus"] = 1;
  CHECK_THROWS_AS(load_scenario(doc), ConfigError);
  doc.erase("bogus");

  doc["n_samples"] = 100.0;
  CHECK(load_scenario(doc).n_samples == 100);
  doc["n_samples"] = 100.5;
  CHECK_THROWS_AS(load_scenario(doc), ConfigError);
  doc["n_samples"] = "100";
  CHECK_THROWS_AS(load_scenario(doc), ConfigError);
  doc["n_samples"] = 0;
  CHECK_THROWS_AS(load_scenario(doc), ConfigError);
  doc["n_samples"] = 75;

  doc["r0"] = -1.0;
  CHECK_THROWS_AS(load_scenario(doc), ConfigError);
  doc["r0"] = 50.0;
  doc["paper_defaults"] = "yes";
  CHECK_THROWS_AS(load_scenario(doc), ConfigError);
}

TEST_CASE("round trip and determinism") {
  SystemParams p = paper_defaults();
  p.ps_dbm = -3.25;
  p.n_samples = 50;
  const nlohmann::json doc = to_json(p);
  CHECK(load_scenario(doc) == p);
  CHECK(load_scenario(doc) == load_scenario(doc));
  CHECK(load_scenario(nlohmann::json::parse(doc.dump())) == p);
}

TEST_CASE("overrides") {
  const SystemParams p = with_override(paper_defaults(), "ps_dbm", 20.0);
  CHECK(p.ps_dbm == 20.0);
  CHECK(p.beta1 == paper_defaults().beta1);
  CHECK_THROWS_AS(with_override(paper_defaults(), "nope", 1.0), ConfigError);
  CHECK_THROWS_AS(with_override(paper_defaults(), "pilot_fraction", 0.05), ConfigError);
}

TEST_CASE("derived quantities") {
  const SystemParams p = paper_defaults();
  CHECK(p.alpha_amp() == doctest::Approx(std::pow(10.0, -1.1 / 20.0)));
  CHECK(p.var_h0() == doctest::Approx(std::pow(50.0, -4.5)));
  CHECK(p.var_htr() == doctest::Approx(std::pow(10.0, -2.5)));
  CHECK(p.n_cov_watts() == doctest::Approx(1e-10));
}
