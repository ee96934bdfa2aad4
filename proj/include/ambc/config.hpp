#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace ambc {

/// Scenario constants. Field names are also the scenario-document keys.
///
/// Powers are given in dBm and the tag coefficient in dB (a power gain);
/// the accessors below return linear values.
struct SystemParams {
  double beta1 = 0.0;  ///< LNA linear gain coefficient
  double beta3 = 0.0;  ///< LNA third-order coefficient, 1/W
  double alpha_db = 0.0;
  double n_ar_dbm = 0.0;
  double n_at_dbm = 0.0;
  double n_cov_dbm = 0.0;
  double v0 = 0.0;
  double vst = 0.0;
  double vtr = 0.0;
  double r0 = 0.0;
  double rst = 0.0;
  double rtr = 0.0;
  double ps_dbm = 0.0;
  int n_samples = 0;  ///< N, samples per tag symbol
  int k_symbols = 0;  ///< K, tag symbols per coherence interval
  double pilot_fraction = 0.0;

  double alpha_amp() const;
  double ps_watts() const;
  double n_ar_watts() const;
  double n_at_watts() const;
  double n_cov_watts() const;

  /// Path-loss variances r^-v of the three links.
  double var_h0() const;
  double var_hst() const;
  double var_htr() const;

  /// round(pilot_fraction * k_symbols).
  int pilot_count() const;

  /// Throws ConfigError naming the field on any invariant violation.
  void validate() const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// The reference scenario: LNA coefficients, noise powers, path loss and K.
/// N, Ps and the pilot fraction are not part of the reference set; the
/// values used here are N = 75, Ps = 10 dBm and 20 % pilots.
SystemParams paper_defaults();

/// Builds validated params from a flat key/value document.
///
/// When the document carries `"paper_defaults": true`, missing keys take the
/// reference values; otherwise every field is required. Unknown keys and
/// type mismatches are rejected.
SystemParams load_scenario(const nlohmann::json& doc);

SystemParams load_scenario_file(const std::filesystem::path& path);

nlohmann::json to_json(const SystemParams& p);

/// Applies `key=value` style overrides (same key names as the document).
SystemParams with_override(const SystemParams& p, const std::string& key, const nlohmann::json& value);

}  // namespace ambc
