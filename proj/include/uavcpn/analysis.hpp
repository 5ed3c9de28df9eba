#pragma once

#include <cmath>
#include <functional>

#include "uavcpn/config.hpp"
#include "uavcpn/coverage.hpp"
#include "uavcpn/quadrature.hpp"

namespace uavcpn {

struct AnalysisOptions {
  // Intensity integral over the CN distance.
  QuadratureOptions inner{1.0e-8, 1.0e-12, 2000};
  // Spatial average over the GU distance.
  QuadratureOptions outer{1.0e-6, 1.0e-12, 2000};
};

// Analytical evaluation for one GU distance r_u.
struct AnalysisResult {
  double r_u = 0.0;               // m
  double t1 = 0.0;                // GU->UAV latency, s
  double service_radius = 0.0;    // r_c^max(r_u), m (before the CN-disc clamp)
  bool service_capped = false;
  double lambda_intensity = 0.0;  // expected number of qualified CNs
  double success_prob = 0.0;      // 1 - exp(-lambda_intensity)
  double quadrature_error_estimate = 0.0;  // absolute, on lambda_intensity
  bool converged = true;
};

struct AveragedResult {
  double success_prob = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  std::size_t intensity_evaluations = 0;
};

// P(at least one point of a Poisson process with mean `intensity`).
inline double success_from_intensity(double intensity) {
  return -std::expm1(-intensity);
}

// Service radius for a residual budget, treating an infinite budget as the
// radius cap.
ServiceRadius service_radius_for(double residual, const ScenarioConfig& cfg);

// Full analytical chain at one GU distance.
AnalysisResult analyze_point(double r_u, const ScenarioConfig& cfg,
                             const AnalysisOptions& options = {});

// Expected number of qualified CNs for a GU at r_u:
// 2 pi lambda_c * int_0^{min(r_c^max, cn_dist_radius)} F_tc(T_res) r dr.
double qualified_intensity(double r_u, const ScenarioConfig& cfg);

// 1 - exp(-qualified_intensity).
double success_probability(double r_u, const ScenarioConfig& cfg);

// (2 / R^2) int_0^R p(r) r dr for an arbitrary per-distance probability.
AveragedResult average_over_request_zone(
    const std::function<double(double)>& p, double request_radius,
    const QuadratureOptions& options = {1.0e-6, 1.0e-12, 2000},
    std::span<const double> breakpoints = {});

// Spatial average of success_probability over GUs uniform in the request
// zone.
AveragedResult average_success_probability(
    const ScenarioConfig& cfg, const AnalysisOptions& options = {});

// Largest r_u at which a task can still meet the deadline through a CN at
// the UAV's foot with the fastest possible computation; beyond it the
// per-GU probability is exactly 0. Infinite when nothing limits it.
double max_servable_gu_distance(const ScenarioConfig& cfg);

}  // namespace uavcpn
