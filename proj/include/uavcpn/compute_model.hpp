#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uavcpn/rng.hpp"

namespace uavcpn {

// Computing latency t_c at a node, in seconds.
struct DeterministicLatency {
  double t_c;
};

struct ExponentialLatency {
  double mean;
};

// floor + Exponential(mean_excess).
struct ShiftedExponentialLatency {
  double floor;
  double mean_excess;
};

// Piecewise-linear CDF through (latency, cumulative_prob) knots. The CDF is 0
// below the first knot, so a first knot with probability p > 0 is an atom of
// mass p. When reference_workload > 0 all latencies scale by
// workload / reference_workload.
struct EmpiricalLatency {
  struct Knot {
    double latency;
    double cumulative_prob;
  };
  std::vector<Knot> knots;
  double reference_workload = 0.0;
};

class ComputeLatencyModel {
 public:
  using Variant = std::variant<DeterministicLatency, ExponentialLatency,
                               ShiftedExponentialLatency, EmpiricalLatency>;

  // Throws std::invalid_argument when the parameters violate the variant's
  // invariants.
  ComputeLatencyModel(Variant v);  // NOLINT(google-explicit-constructor)

  static ComputeLatencyModel deterministic(double t_c);
  static ComputeLatencyModel exponential(double mean);
  static ComputeLatencyModel shifted_exponential(double floor,
                                                 double mean_excess);
  static ComputeLatencyModel empirical(std::vector<EmpiricalLatency::Knot> knots,
                                       double reference_workload = 0.0);

  // Parses "deterministic:0.2", "exponential:2.0",
  // "shifted_exponential:0.1+1.9" or "empirical:0.1/0.2,0.5/1.0[@ref_mb]".
  // Latencies are in milliseconds, the reference workload in megabytes.
  static ComputeLatencyModel parse(std::string_view tag);

  // Inverse of parse (milliseconds), round-trippable.
  std::string to_string() const;

  const Variant& variant() const { return v_; }
  bool is_deterministic() const {
    return std::holds_alternative<DeterministicLatency>(v_);
  }

  // Mean latency in seconds at the given workload.
  double mean(double workload) const;

  // Positive latencies where the CDF jumps or has a kink.
  std::vector<double> cdf_breakpoints(double workload) const;

  // Same family with every time parameter scaled so that the mean becomes
  // new_mean (at the given workload).
  ComputeLatencyModel with_mean(double new_mean, double workload) const;

 private:
  Variant v_;
};

// P(t_c <= t_res). 0 for t_res < 0, nondecreasing and right-continuous.
double latency_cdf(const ComputeLatencyModel& model, double t_res,
                   double workload);

// Draws t_c. The deterministic variant consumes no random numbers.
double sample_latency(const ComputeLatencyModel& model, RandomStream& rng,
                      double workload);

}  // namespace uavcpn
