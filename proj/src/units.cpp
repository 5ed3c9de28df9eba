#include "uavcpn/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uavcpn {

double db_to_linear(double db) {
  if (!std::isfinite(db)) {
    throw std::invalid_argument("db_to_linear: non-finite input " +
                                std::to_string(db));
  }
  return std::pow(10.0, db / 10.0);
}

double linear_to_db(double ratio) {
  if (!std::isfinite(ratio) || ratio <= 0.0) {
    throw std::invalid_argument("linear_to_db: ratio must be finite and > 0");
  }
  return 10.0 * std::log10(ratio);
}

double dbw_to_watts(double dbw) { return db_to_linear(dbw); }

double dbm_to_watts(double dbm) { return db_to_linear(dbm) / 1000.0; }

}  // namespace uavcpn
