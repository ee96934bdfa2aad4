#include "ambc/units.hpp"

#include <cmath>
#include <string>

#include "ambc/errors.hpp"

namespace ambc {
namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw ValidationError(std::string(what) + ": non-finite input");
  }
}

}  // namespace

double dbm_to_watts(double p_dbm) {
  require_finite(p_dbm, "dbm_to_watts");
  return std::pow(10.0, (p_dbm - 30.0) / 10.0);
}

double watts_to_dbm(double p_watts) {
  if (!std::isfinite(p_watts) || p_watts <= 0.0) {
    throw ValidationError("watts_to_dbm: power must be positive and finite");
  }
  return 10.0 * std::log10(p_watts) + 30.0;
}

double db_to_power_gain(double g_db) {
  require_finite(g_db, "db_to_power_gain");
  return std::pow(10.0, g_db / 10.0);
}

double db_to_amplitude_gain(double g_db) {
  require_finite(g_db, "db_to_amplitude_gain");
  return std::pow(10.0, g_db / 20.0);
}

}  // namespace ambc
