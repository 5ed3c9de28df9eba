#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "uavcpn/config.hpp"
#include "uavcpn/montecarlo.hpp"

namespace uavcpn {

enum class Engine { kTheory, kMonteCarlo, kBoth };

std::string_view to_string(Engine engine);
// "theory", "mc" or "both".
Engine parse_engine(std::string_view text);

// Swept parameters, in config-file units: altitude [m], cn_density
// [nodes/km^2], cn_dist_radius [m], t_max [ms], compute_latency [ms, mean].
enum class SweepParameter {
  kAltitude,
  kCnDensity,
  kCnDistRadius,
  kTMax,
  kComputeLatency,
};

std::string_view to_string(SweepParameter parameter);
SweepParameter parse_sweep_parameter(std::string_view text);

struct SweepAxis {
  SweepParameter parameter = SweepParameter::kAltitude;
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 2;
  bool log_spacing = false;

  // "name=start:stop:points[:log|:lin]".
  static SweepAxis parse(std::string_view text);
  std::string to_string() const;
  std::vector<double> values() const;
};

// Returns cfg with one parameter replaced (value in config-file units).
// compute_latency rescales the latency model to the given mean.
ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg,
                                 SweepParameter parameter, double value);

struct SweepSpec {
  std::vector<SweepAxis> axes;
  Engine engine = Engine::kTheory;
  SimulationOptions mc;  // n_trials, gus_per_trial, seed, confidence
  unsigned jobs = 1;

  // Throws std::invalid_argument on 0 or >2 axes, < 2 points, or
  // non-positive ranges.
  void validate() const;
};

struct SweepRecord {
  std::vector<double> swept;  // one value per axis
  std::optional<double> theory_prob;
  std::optional<double> mc_mean;
  std::optional<double> mc_ci;
  double lambda_center = 0.0;  // qualified-CN intensity for a GU at r_u = 0
  double service_radius_center = 0.0;  // m
  double wall_time = 0.0;  // s
  bool converged = true;
};

// One record per grid point, first axis outermost. Points are evaluated
// concurrently with spec.jobs threads; the order of the result is fixed.
std::vector<SweepRecord> run_sweep(const ScenarioConfig& base,
                                   const SweepSpec& spec);

// Column names for the spec's engine mode, in output order.
std::vector<std::string> sweep_columns(const SweepSpec& spec);

// CSV with a `#` header block holding the tool version, the sweep spec and
// the full effective base config.
void write_sweep_csv(std::ostream& out, const ScenarioConfig& base,
                     const SweepSpec& spec,
                     const std::vector<SweepRecord>& records);

void write_sweep_json(std::ostream& out, const ScenarioConfig& base,
                      const SweepSpec& spec,
                      const std::vector<SweepRecord>& records);

// Theory versus simulation at each altitude.
struct CompareRow {
  double altitude = 0.0;
  double theory = 0.0;
  double mc_mean = 0.0;
  double mc_ci = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool converged = true;
};

// |theory - mc| must not exceed max(0.01, 3 * ci).
double agreement_tolerance(double ci_halfwidth);

std::vector<CompareRow> run_compare(const ScenarioConfig& base,
                                    const std::vector<double>& altitudes,
                                    const SimulationOptions& mc);

const char* tool_version();

}  // namespace uavcpn
