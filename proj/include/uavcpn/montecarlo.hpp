#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uavcpn/config.hpp"
#include "uavcpn/rng.hpp"

namespace uavcpn {

struct PlanarPoint {
  double x;
  double y;
  double norm() const;
};

// Refuses realizations whose expected size exceeds this many points.
inline constexpr double kMaxExpectedPoints = 5.0e7;

// Homogeneous PPP restricted to a disc centred at the origin: a
// Poisson(density * pi * radius^2) count of points uniform on the disc.
std::vector<PlanarPoint> sample_ppp_disc(double density, double radius,
                                         RandomStream& rng);

struct TrialOutcome {
  double gu_distance = 0.0;  // radial, m
  bool served = false;
  std::optional<double> best_e2e_latency;  // s; empty when no CN exists
  std::size_t qualified_cn_count = 0;
};

struct Estimate {
  double mean = 0.0;
  double ci_halfwidth = 0.0;
  double confidence_level = 0.99;
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
};

// Summary of many independent trials with the GU pinned at one distance.
struct FixedDistanceStats {
  double gu_distance = 0.0;
  std::uint64_t n_trials = 0;
  double count_mean = 0.0;
  double count_variance = 0.0;  // unbiased
  double served_fraction = 0.0;
  double served_ci_halfwidth = 0.0;
};

struct SimulationOptions {
  std::uint64_t n_trials = 10000;
  std::uint64_t gus_per_trial = 400;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double confidence_level = 0.99;
};

// Monte Carlo engine for one scenario. Every trial draws its CN realization,
// GU positions and computing latencies from streams keyed by
// (seed, trial index), so results do not depend on execution order.
class Simulator {
 public:
  explicit Simulator(ScenarioConfig cfg);

  const ScenarioConfig& config() const { return cfg_; }

  // Radius of the simulated CN disc. Points farther out can never qualify for
  // any GU, so the unbounded plane is realized exactly.
  double disc_radius() const { return disc_radius_; }

  // One CN realization shared by gus_per_trial GUs drawn uniformly in the
  // request zone.
  std::vector<TrialOutcome> run_trial(std::uint64_t gus_per_trial,
                                      std::uint64_t seed,
                                      std::uint64_t trial_index) const;

  // One CN realization, one GU at the given distance.
  TrialOutcome run_fixed_gu(double gu_distance, std::uint64_t seed,
                            std::uint64_t trial_index) const;

  // Downlink latencies of a realization, ascending.
  std::vector<double> downlink_latencies(
      const std::vector<PlanarPoint>& cns) const;

  // Outcome for a GU at gu_distance against CNs with the given sorted
  // downlink latencies. Draws one computing latency per eligible pair.
  TrialOutcome evaluate_gu(double gu_distance,
                           const std::vector<double>& sorted_t2,
                           RandomStream& latency_rng) const;

 private:
  ScenarioConfig cfg_;
  LinkModel up_;
  LinkModel down_;
  double disc_radius_;
};

// Served fraction over n_trials * gus_per_trial GUs with a normal-approximation
// confidence interval over per-trial means (trials are the independent unit).
Estimate estimate_success(const ScenarioConfig& cfg,
                          const SimulationOptions& options);

// Qualified-CN count and served statistics for a GU fixed at gu_distance.
FixedDistanceStats simulate_fixed_distance(const ScenarioConfig& cfg,
                                           double gu_distance,
                                           const SimulationOptions& options);

// Two-sided standard normal quantile for the given confidence level.
double normal_quantile_two_sided(double confidence_level);

}  // namespace uavcpn
