#include <doctest.h>

#include <cmath>

#include "uavcpn/config.hpp"
#include "uavcpn/coverage.hpp"

using namespace uavcpn;

namespace {

const ScenarioConfig kCfg{};
const LinkModel kDown = kCfg.downlink_model();
constexpr double kH = 200.0;

}  // namespace

TEST_CASE("downlink latency is strictly increasing (bisection precondition)") {
  for (double h : {50.0, 200.0, 1000.0}) {
    double prev = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double t = kDown.latency(i * 25.0, h);
      CHECK(t > prev);
      prev = t;
    }
  }
}

TEST_CASE("no residual budget means no service zone") {
  const auto s = max_service_radius(0.0, kDown, kH);
  CHECK(s.radius == 0.0);
  CHECK_FALSE(s.capped);
  const double t0 = kDown.latency(0.0, kH);
  CHECK(max_service_radius(t0, kDown, kH).radius == 0.0);
  CHECK(max_service_radius(t0 * 1.001, kDown, kH).radius > 0.0);
}

TEST_CASE("inversion round trip") {
  for (double r0 : {1.0, 123.4, 500.0, 2500.0, 40000.0}) {
    const double residual = kDown.latency(r0, kH);
    const auto s = max_service_radius(residual, kDown, kH);
    CAPTURE(r0);
    CHECK(std::abs(s.radius - r0) <= kRadiusTolerance);
    CHECK(kDown.latency(s.radius, kH) <= residual);
    CHECK_FALSE(s.capped);
  }
}

TEST_CASE("absurd budget hits the cap") {
  const auto s = max_service_radius(1e6, kDown, kH);
  CHECK(s.radius == kRadiusCap);
  CHECK(s.capped);
  CHECK_THROWS_AS(max_service_radius(std::nan(""), kDown, kH), std::invalid_argument);
  CHECK_THROWS_AS(max_service_radius(INFINITY, kDown, kH), std::invalid_argument);
}

TEST_CASE("service radius is nondecreasing in the residual") {
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double residual = 0.02 + i * 3e-4;
    const double r = max_service_radius(residual, kDown, kH).radius;
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("effective density") {
  const auto det = ComputeLatencyModel::deterministic(2e-4);
  const ServiceRadius s{800.0, false, 0.03};
  SUBCASE("outside the service radius") {
    CHECK(effective_density(5e-6, 800.1, s, 1.0, det, 8e6) == 0.0);
  }
  SUBCASE("both factors one") {
    CHECK(effective_density(5e-6, 799.0, s, 2e-4, det, 8e6) == 5e-6);
  }
  SUBCASE("exponential at its mean") {
    const auto expo = ComputeLatencyModel::exponential(2e-3);
    CHECK(effective_density(5e-6, 10.0, s, 2e-3, expo, 8e6) ==
          doctest::Approx(5e-6 * (1.0 - std::exp(-1.0))).epsilon(1e-14));
  }
}

TEST_CASE("effective density never amplifies and decays along a ray") {
  const auto expo = ComputeLatencyModel::exponential(2e-3);
  const LinkModel up = kCfg.uplink_model();
  const double residual = kCfg.t_max - up.latency(100.0, kH);
  const auto s = max_service_radius(residual, kDown, kH);
  double prev = kCfg.cn_density;
  for (int i = 0; i <= 300; ++i) {
    const double r = i * 5.0;
    const double d = effective_density(kCfg.cn_density, r, s,
                                       residual - kDown.latency(r, kH), expo,
                                       kCfg.data_size);
    CHECK(d <= kCfg.cn_density);
    CHECK(d <= prev);
    if (r > s.radius) CHECK(d == 0.0);
    prev = d;
  }
}
