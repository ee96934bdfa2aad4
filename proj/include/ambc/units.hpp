#pragma once

namespace ambc {

/// 10^((p - 30) / 10). Throws ValidationError for non-finite input.
double dbm_to_watts(double p_dbm);

/// Inverse of dbm_to_watts. Requires a positive, finite power.
double watts_to_dbm(double p_watts);

/// 10^(g / 10).
double db_to_power_gain(double g_db);

/// Amplitude multiplier of a power gain given in dB: 10^(g / 20).
double db_to_amplitude_gain(double g_db);

}  // namespace ambc
