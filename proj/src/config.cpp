#include "ambc/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>
#include <variant>
#include <vector>

#include "ambc/errors.hpp"
#include "ambc/units.hpp"

namespace ambc {
namespace {

using RealField = double SystemParams::*;
using IntField = int SystemParams::*;

struct FieldSpec {
  std::string_view name;
  std::variant<RealField, IntField> member;
};

constexpr std::string_view kDefaultsFlag = "paper_defaults";

const std::array<FieldSpec, 16>& field_table() {
  static const std::array<FieldSpec, 16> table{{
      {"beta1", &SystemParams::beta1},
      {"beta3", &SystemParams::beta3},
      {"alpha_db", &SystemParams::alpha_db},
      {"n_ar_dbm", &SystemParams::n_ar_dbm},
      {"n_at_dbm", &SystemParams::n_at_dbm},
      {"n_cov_dbm", &SystemParams::n_cov_dbm},
      {"v0", &SystemParams::v0},
      {"vst", &SystemParams::vst},
      {"vtr", &SystemParams::vtr},
      {"r0", &SystemParams::r0},
      {"rst", &SystemParams::rst},
      {"rtr", &SystemParams::rtr},
      {"ps_dbm", &SystemParams::ps_dbm},
      {"n_samples", &SystemParams::n_samples},
      {"k_symbols", &SystemParams::k_symbols},
      {"pilot_fraction", &SystemParams::pilot_fraction},
  }};
  return table;
}

const FieldSpec* find_field(std::string_view name) {
  for (const auto& f : field_table()) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

[[noreturn]] void fail(std::string_view field, const std::string& msg) {
  throw ConfigError({std::string(field)}, std::string(field) + ": " + msg);
}

void assign(SystemParams& p, const FieldSpec& spec, const nlohmann::json& value) {
  if (std::holds_alternative<RealField>(spec.member)) {
    if (!value.is_number()) fail(spec.name, "expected a number");
    p.*std::get<RealField>(spec.member) = value.get<double>();
    return;
  }
  // Integer fields accept 100 and 100.0 but not 100.5.
  if (value.is_number_integer()) {
    const auto v = value.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      fail(spec.name, "integer out of range");
    }
    p.*std::get<IntField>(spec.member) = static_cast<int>(v);
  } else if (value.is_number_float()) {
    const double v = value.get<double>();
    if (!std::isfinite(v) || std::trunc(v) != v || std::abs(v) > 2e9) {
      fail(spec.name, "expected an integer");
    }
    p.*std::get<IntField>(spec.member) = static_cast<int>(v);
  } else {
    fail(spec.name, "expected an integer");
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

double SystemParams::alpha_amp() const { return db_to_amplitude_gain(alpha_db); }
double SystemParams::ps_watts() const { return dbm_to_watts(ps_dbm); }
double SystemParams::n_ar_watts() const { return dbm_to_watts(n_ar_dbm); }
double SystemParams::n_at_watts() const { return dbm_to_watts(n_at_dbm); }
double SystemParams::n_cov_watts() const { return dbm_to_watts(n_cov_dbm); }
double SystemParams::var_h0() const { return std::pow(r0, -v0); }
double SystemParams::var_hst() const { return std::pow(rst, -vst); }
double SystemParams::var_htr() const { return std::pow(rtr, -vtr); }

int SystemParams::pilot_count() const {
  return static_cast<int>(std::lround(pilot_fraction * k_symbols));
}

void SystemParams::validate() const {
  for (const auto& f : field_table()) {
    if (std::holds_alternative<RealField>(f.member) && !std::isfinite(this->*std::get<RealField>(f.member))) {
      fail(f.name, "must be finite");
    }
  }
  if (n_samples < 1) fail("n_samples", "must be >= 1");
  if (k_symbols < 1) fail("k_symbols", "must be >= 1");
  if (r0 <= 0.0) fail("r0", "distance must be > 0");
  if (rst <= 0.0) fail("rst", "distance must be > 0");
  if (rtr <= 0.0) fail("rtr", "distance must be > 0");
  if (v0 <= 0.0) fail("v0", "path-loss exponent must be > 0");
  if (vst <= 0.0) fail("vst", "path-loss exponent must be > 0");
  if (vtr <= 0.0) fail("vtr", "path-loss exponent must be > 0");
  if (pilot_fraction < 0.0 || pilot_fraction >= 1.0) fail("pilot_fraction", "must satisfy 0 <= f < 1");
  if (pilot_fraction > 0.0) {
    const int k = pilot_count();
    if (k < 2 || k % 2 != 0) {
      fail("pilot_fraction", "pilot_fraction * k_symbols rounds to " + std::to_string(k) +
                                 " pilots; an even count >= 2 is required");
    }
  }
}

SystemParams paper_defaults() {
  SystemParams p;
  p.beta1 = 56.23;
  p.beta3 = -7497.33;
  p.alpha_db = -1.1;
  p.n_ar_dbm = -100.0;
  p.n_at_dbm = -100.0;
  p.n_cov_dbm = -70.0;
  p.v0 = 4.5;
  p.vst = 4.5;
  p.vtr = 2.5;
  p.r0 = 50.0;
  p.rst = 50.0;
  p.rtr = 10.0;
  p.ps_dbm = 10.0;
  p.n_samples = 75;
  p.k_symbols = 100;
  p.pilot_fraction = 0.2;
  return p;
}

SystemParams load_scenario(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ConfigError({}, "scenario document must be a key/value object");
  }

  bool use_defaults = false;
  if (auto it = doc.find(kDefaultsFlag); it != doc.end()) {
    if (!it->is_boolean()) fail(kDefaultsFlag, "expected true or false");
    use_defaults = it->get<bool>();
  }

  std::vector<std::string> unknown;
  for (const auto& [key, value] : doc.items()) {
    if (key != kDefaultsFlag && find_field(key) == nullptr) unknown.push_back(key);
  }
  if (!unknown.empty()) {
    throw ConfigError(unknown, "unknown scenario keys: " + join(unknown));
  }

  if (!use_defaults) {
    std::vector<std::string> missing;
    for (const auto& f : field_table()) {
      if (!doc.contains(f.name)) missing.emplace_back(f.name);
    }
    if (!missing.empty()) {
      throw ConfigError(missing, "missing scenario keys: " + join(missing));
    }
  }

  SystemParams p = use_defaults ? paper_defaults() : SystemParams{};
  for (const auto& f : field_table()) {
    if (auto it = doc.find(f.name); it != doc.end()) assign(p, f, *it);
  }
  p.validate();
  return p;
}

SystemParams load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({}, "scenario file " + path.string() + " is not a valid document: " + e.what());
  }
  return load_scenario(doc);
}

nlohmann::json to_json(const SystemParams& p) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& f : field_table()) {
    const std::string key(f.name);
    if (std::holds_alternative<RealField>(f.member)) {
      doc[key] = p.*std::get<RealField>(f.member);
    } else {
      doc[key] = p.*std::get<IntField>(f.member);
    }
  }
  return doc;
}

SystemParams with_override(const SystemParams& p, const std::string& key, const nlohmann::json& value) {
  const FieldSpec* spec = find_field(key);
  if (spec == nullptr) throw ConfigError({key}, "unknown scenario key: " + key);
  SystemParams out = p;
  assign(out, *spec, value);
  out.validate();
  return out;
}

}  // namespace ambc
