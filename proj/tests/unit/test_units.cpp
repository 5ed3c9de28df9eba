#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "uavcpn/units.hpp"

using namespace uavcpn;

TEST_CASE("db_to_linear examples") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(dbw_to_watts(20.0) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(dbm_to_watts(-120.0) == doctest::Approx(1e-15).epsilon(1e-15));
}

TEST_CASE("non-finite input is rejected") {
  CHECK_THROWS_AS(db_to_linear(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(db_to_linear(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(linear_to_db(0.0), std::invalid_argument);
  CHECK_THROWS_AS(linear_to_db(-1.0), std::invalid_argument);
}

TEST_CASE("dB round trip over [-200, 200]") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(-200.0, 200.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = dist(gen);
    const double back = linear_to_db(db_to_linear(x));
    CHECK(std::abs(back - x) <= 1e-12 * std::max(1.0, std::abs(x)));
  }
}
