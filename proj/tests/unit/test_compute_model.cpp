#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "uavcpn/compute_model.hpp"

using namespace uavcpn;

namespace {

constexpr double kWorkload = 8e6;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<ComputeLatencyModel> all_variants() {
  return {
      ComputeLatencyModel::deterministic(2e-4),
      ComputeLatencyModel::exponential(2e-3),
      ComputeLatencyModel::shifted_exponential(1e-4, 1.9e-3),
      ComputeLatencyModel::empirical({{1e-4, 0.2}, {5e-4, 0.7}, {1e-3, 1.0}}),
  };
}

// Two-sided Kolmogorov-Smirnov distance, exact at atoms of the CDF.
double ks_distance(std::vector<double> samples, const ComputeLatencyModel& m) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    const double v = samples[i];
    std::size_t j = i;
    while (j < samples.size() && samples[j] == v) ++j;
    const double left_emp = static_cast<double>(i) / n;
    const double right_emp = static_cast<double>(j) / n;
    const double left_cdf = latency_cdf(m, std::nextafter(v, -kInf), kWorkload);
    const double right_cdf = latency_cdf(m, v, kWorkload);
    d = std::max({d, std::abs(left_emp - left_cdf),
                  std::abs(right_emp - right_cdf)});
    i = j;
  }
  return d;
}

}  // namespace

TEST_CASE("CDF examples") {
  const auto det = ComputeLatencyModel::deterministic(2e-4);
  CHECK(latency_cdf(det, 3e-4, kWorkload) == 1.0);
  CHECK(latency_cdf(det, 2e-4, kWorkload) == 1.0);  // right-continuous
  CHECK(latency_cdf(det, 1.999e-4, kWorkload) == 0.0);
  for (const auto& m : all_variants()) {
    CHECK(latency_cdf(m, -1e-3, kWorkload) == 0.0);
    CHECK(latency_cdf(m, kInf, kWorkload) == 1.0);
    CHECK(latency_cdf(m, -0.0 - 1e-300, kWorkload) == 0.0);
  }
  const auto expo = ComputeLatencyModel::exponential(2e-3);
  CHECK(latency_cdf(expo, 2e-3, kWorkload) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("CDF is nondecreasing") {
  for (const auto& m : all_variants()) {
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double f = latency_cdf(m, i * 5e-6 - 1e-4, kWorkload);
      CHECK(f >= prev);
      CHECK(f <= 1.0);
      prev = f;
    }
  }
}

TEST_CASE("empirical table interpolation and workload scaling") {
  const auto m = ComputeLatencyModel::empirical(
      {{1e-4, 0.2}, {5e-4, 0.7}, {1e-3, 1.0}}, 4e6);
  // Workload 8e6 doubles every latency.
  CHECK(latency_cdf(m, 1.99e-4, 8e6) == 0.0);
  CHECK(latency_cdf(m, 2e-4, 8e6) == doctest::Approx(0.2));
  CHECK(latency_cdf(m, 6e-4, 8e6) == doctest::Approx(0.45));
  CHECK(latency_cdf(m, 2e-3, 8e6) == 1.0);
  CHECK(latency_cdf(m, 3e-4, 4e6) == doctest::Approx(0.45));
  CHECK(m.mean(4e6) == doctest::Approx(0.2 * 1e-4 + 0.5 * 3e-4 + 0.3 * 7.5e-4));
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS(ComputeLatencyModel::deterministic(0.0));
  CHECK_THROWS(ComputeLatencyModel::exponential(-1.0));
  CHECK_THROWS(ComputeLatencyModel::shifted_exponential(-1e-4, 1e-3));
  CHECK_NOTHROW(ComputeLatencyModel::shifted_exponential(0.0, 1e-3));
  CHECK_THROWS(ComputeLatencyModel::empirical({{1e-3, 0.5}, {1e-3, 1.0}}));
  CHECK_THROWS(ComputeLatencyModel::empirical({{1e-3, 0.5}, {2e-3, 0.4}}));
  CHECK_THROWS(ComputeLatencyModel::empirical({{1e-3, 0.5}, {2e-3, 0.9}}));
}

TEST_CASE("tag parsing round trips") {
  for (const char* tag :
       {"deterministic:0.2", "exponential:2", "shifted_exponential:0.1+1.9",
        "empirical:0.1/0.2,0.5/0.7,1/1", "empirical:0.1/0.5,1/1@2"}) {
    CHECK(ComputeLatencyModel::parse(tag).to_string() == tag);
  }
  CHECK(ComputeLatencyModel::parse("deterministic:0.2").mean(1.0) ==
        doctest::Approx(2e-4).epsilon(1e-15));
  CHECK_THROWS(ComputeLatencyModel::parse("deterministic"));
  CHECK_THROWS(ComputeLatencyModel::parse("weibull:1"));
  CHECK_THROWS(ComputeLatencyModel::parse("shifted_exponential:0.1"));
  CHECK_THROWS(ComputeLatencyModel::parse("empirical:0.1,1/1"));
}

TEST_CASE("sampler examples") {
  RandomStream rng(1, 0);
  const auto det = ComputeLatencyModel::deterministic(2e-4);
  for (int i = 0; i < 100; ++i) CHECK(sample_latency(det, rng, kWorkload) == 2e-4);

  const auto expo = ComputeLatencyModel::exponential(2e-3);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sample_latency(expo, rng, kWorkload);
  const double sigma = 2e-3 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(sum / n - 2e-3) < 3.0 * sigma);

  const auto shifted = ComputeLatencyModel::shifted_exponential(1e-4, 1.9e-3);
  for (int i = 0; i < 10000; ++i) {
    CHECK(sample_latency(shifted, rng, kWorkload) >= 1e-4);
  }
}

TEST_CASE("sampler matches CDF (Kolmogorov-Smirnov, alpha = 0.01)") {
  const int n = 100000;
  // Asymptotic critical value sqrt(-ln(alpha / 2) / 2) / sqrt(n).
  const double critical = std::sqrt(-std::log(0.005) / 2.0) / std::sqrt(n);
  std::uint64_t stream = 0;
  for (const auto& m : all_variants()) {
    RandomStream rng(2024, stream++);
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample_latency(m, rng, kWorkload);
    CAPTURE(m.to_string());
    CHECK(ks_distance(xs, m) < critical);
  }
}

TEST_CASE("with_mean rescales within the family") {
  for (const auto& m : all_variants()) {
    const auto scaled = m.with_mean(5e-3, kWorkload);
    CHECK(scaled.mean(kWorkload) == doctest::Approx(5e-3).epsilon(1e-12));
    CHECK(scaled.variant().index() == m.variant().index());
  }
}

TEST_CASE("CDF breakpoints") {
  CHECK(ComputeLatencyModel::deterministic(2e-4).cdf_breakpoints(1.0) ==
        std::vector<double>{2e-4});
  CHECK(ComputeLatencyModel::exponential(2e-4).cdf_breakpoints(1.0).empty());
  CHECK(ComputeLatencyModel::shifted_exponential(1e-4, 1e-3)
            .cdf_breakpoints(1.0)
            .size() == 1);
}
