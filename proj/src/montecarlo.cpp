#include "uavcpn/montecarlo.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "parallel.hpp"
#include "uavcpn/analysis.hpp"

namespace uavcpn {

namespace {

double loosest_service_radius(const ScenarioConfig& cfg) {
  const double t1_min = cfg.uplink_model().latency(0.0, cfg.altitude);
  if (t1_min >= cfg.t_max) return 0.0;
  const ServiceRadius s = service_radius_for(cfg.t_max - t1_min, cfg);
  if (s.radius == 0.0) return 0.0;
  // Bisection returns the inner edge; pad by a few tolerances.
  return std::min(kRadiusCap, s.radius + 4.0 * kRadiusTolerance);
}

// Mean and confidence half-width of per-trial fractions.
std::pair<double, double> mean_and_ci(const std::vector<double>& values,
                                      double z) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, z * std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

double PlanarPoint::norm() const { return std::hypot(x, y); }

std::vector<PlanarPoint> sample_ppp_disc(double density, double radius,
                                         RandomStream& rng) {
  if (!(density >= 0.0) || !(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument(
        "sample_ppp_disc: density and radius must be >= 0, radius finite");
  }
  const double expected = density * std::numbers::pi * radius * radius;
  if (expected > kMaxExpectedPoints) {
    throw std::length_error(
        "sample_ppp_disc: expected point count too large; bound the CN "
        "distribution radius");
  }
  std::vector<PlanarPoint> points(rng.poisson(expected));
  for (auto& p : points) {
    const double rho = radius * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    p = {rho * std::cos(phi), rho * std::sin(phi)};
  }
  return points;
}

Simulator::Simulator(ScenarioConfig cfg)
    : cfg_(std::move(cfg)),
      up_(cfg_.uplink_model()),
      down_(cfg_.downlink_model()),
      disc_radius_(std::min(cfg_.cn_dist_radius, loosest_service_radius(cfg_))) {
  if (const auto v = validate(cfg_); !v.empty()) {
    throw std::invalid_argument("Simulator: invalid configuration (" +
                                v.front().field + ")");
  }
}

std::vector<double> Simulator::downlink_latencies(
    const std::vector<PlanarPoint>& cns) const {
  std::vector<double> t2(cns.size());
  std::transform(cns.begin(), cns.end(), t2.begin(),
                 [this](const PlanarPoint& p) {
                   return down_.latency(p.norm(), cfg_.altitude);
                 });
  std::sort(t2.begin(), t2.end());
  return t2;
}

TrialOutcome Simulator::evaluate_gu(double gu_distance,
                                    const std::vector<double>& sorted_t2,
                                    RandomStream& latency_rng) const {
  TrialOutcome out;
  out.gu_distance = gu_distance;
  if (sorted_t2.empty()) return out;

  const double t1 = up_.latency(gu_distance, cfg_.altitude);
  const double budget = cfg_.t_max - t1;
  const auto& model = cfg_.compute_model;

  if (model.is_deterministic()) {
    const double t_c = sample_latency(model, latency_rng, cfg_.data_size);
    // budget - t2 is nonincreasing along the sorted latencies.
    const auto end = std::partition_point(
        sorted_t2.begin(), sorted_t2.end(),
        [&](double t2) { return budget - t2 >= t_c; });
    out.qualified_cn_count = static_cast<std::size_t>(end - sorted_t2.begin());
    out.best_e2e_latency = t1 + sorted_t2.front() + t_c;
    out.served = out.qualified_cn_count > 0;
    return out;
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < sorted_t2.size(); ++j) {
    const double remaining = budget - sorted_t2[j];
    // Computing latency is >= 0, so later CNs cannot qualify either.
    if (remaining < 0.0 && j > 0) break;
    const double t_c = sample_latency(model, latency_rng, cfg_.data_size);
    if (t_c <= remaining) ++out.qualified_cn_count;
    best = std::min(best, t1 + sorted_t2[j] + t_c);
  }
  out.best_e2e_latency = best;
  out.served = out.qualified_cn_count > 0;
  return out;
}

std::vector<TrialOutcome> Simulator::run_trial(std::uint64_t gus_per_trial,
                                               std::uint64_t seed,
                                               std::uint64_t trial_index) const {
  if (gus_per_trial < 1) {
    throw std::invalid_argument("run_trial: gus_per_trial must be >= 1");
  }
  RandomStream cn_rng(seed, trial_index, StreamPurpose::kComputeNodes);
  RandomStream gu_rng(seed, trial_index, StreamPurpose::kGroundUsers);
  RandomStream latency_rng(seed, trial_index, StreamPurpose::kComputeLatency);

  const auto t2 = downlink_latencies(
      sample_ppp_disc(cfg_.cn_density, disc_radius_, cn_rng));
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(gus_per_trial);
  for (std::uint64_t g = 0; g < gus_per_trial; ++g) {
    const double r_u = cfg_.request_radius * std::sqrt(gu_rng.uniform());
    outcomes.push_back(evaluate_gu(r_u, t2, latency_rng));
  }
  return outcomes;
}

TrialOutcome Simulator::run_fixed_gu(double gu_distance, std::uint64_t seed,
                                     std::uint64_t trial_index) const {
  RandomStream cn_rng(seed, trial_index, StreamPurpose::kComputeNodes);
  RandomStream latency_rng(seed, trial_index, StreamPurpose::kComputeLatency);
  const auto t2 = downlink_latencies(
      sample_ppp_disc(cfg_.cn_density, disc_radius_, cn_rng));
  return evaluate_gu(gu_distance, t2, latency_rng);
}

double normal_quantile_two_sided(double confidence_level) {
  if (!(confidence_level > 0.0 && confidence_level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }
  return boost::math::quantile(boost::math::normal_distribution<double>(),
                               0.5 + 0.5 * confidence_level);
}

Estimate estimate_success(const ScenarioConfig& cfg,
                          const SimulationOptions& options) {
  if (options.n_trials < 1) {
    throw std::invalid_argument("estimate_success: n_trials must be >= 1");
  }
  const Simulator sim(cfg);
  std::vector<std::uint64_t> served(options.n_trials, 0);
  detail::parallel_for(options.n_trials, options.jobs, [&](std::uint64_t t) {
    const auto outcomes = sim.run_trial(options.gus_per_trial, options.seed, t);
    served[t] = static_cast<std::uint64_t>(
        std::count_if(outcomes.begin(), outcomes.end(),
                      [](const TrialOutcome& o) { return o.served; }));
  });

  const double z = normal_quantile_two_sided(options.confidence_level);
  const double g = static_cast<double>(options.gus_per_trial);
  Estimate est;
  est.confidence_level = options.confidence_level;
  est.n_trials = options.n_trials;
  est.seed = options.seed;
  if (options.n_trials == 1) {
    // No between-trial spread available; fall back to the binomial variance.
    est.mean = static_cast<double>(served[0]) / g;
    est.ci_halfwidth = z * std::sqrt(est.mean * (1.0 - est.mean) / g);
    return est;
  }
  std::vector<double> fractions(served.size());
  std::transform(served.begin(), served.end(), fractions.begin(),
                 [g](std::uint64_t s) { return static_cast<double>(s) / g; });
  std::tie(est.mean, est.ci_halfwidth) = mean_and_ci(fractions, z);
  return est;
}

FixedDistanceStats simulate_fixed_distance(const ScenarioConfig& cfg,
                                           double gu_distance,
                                           const SimulationOptions& options) {
  if (options.n_trials < 2) {
    throw std::invalid_argument("simulate_fixed_distance: need >= 2 trials");
  }
  const Simulator sim(cfg);
  std::vector<TrialOutcome> outcomes(options.n_trials);
  detail::parallel_for(options.n_trials, options.jobs, [&](std::uint64_t t) {
    outcomes[t] = sim.run_fixed_gu(gu_distance, options.seed, t);
  });

  std::vector<double> counts(outcomes.size());
  std::vector<double> served(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    counts[i] = static_cast<double>(outcomes[i].qualified_cn_count);
    served[i] = outcomes[i].served ? 1.0 : 0.0;
  }
  FixedDistanceStats stats;
  stats.gu_distance = gu_distance;
  stats.n_trials = options.n_trials;
  const double n = static_cast<double>(counts.size());
  for (double c : counts) stats.count_mean += c;
  stats.count_mean /= n;
  for (double c : counts) {
    stats.count_variance += (c - stats.count_mean) * (c - stats.count_mean);
  }
  stats.count_variance /= n - 1.0;
  std::tie(stats.served_fraction, stats.served_ci_halfwidth) =
      mean_and_ci(served, normal_quantile_two_sided(options.confidence_level));
  return stats;
}

}  // namespace uavcpn
