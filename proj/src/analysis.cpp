#include "uavcpn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace uavcpn {

namespace {

// Minimum latency the compute model can produce (left edge of its support).
double fastest_compute(const ScenarioConfig& cfg) {
  if (latency_cdf(cfg.compute_model, 0.0, cfg.data_size) > 0.0) return 0.0;
  const auto points = cfg.compute_model.cdf_breakpoints(cfg.data_size);
  return points.empty() ? 0.0 : *std::min_element(points.begin(), points.end());
}

}  // namespace

ServiceRadius service_radius_for(double residual, const ScenarioConfig& cfg) {
  if (std::isinf(residual) && residual > 0.0) {
    return {kRadiusCap, true, residual};
  }
  return max_service_radius(residual, cfg.downlink_model(), cfg.altitude);
}

AnalysisResult analyze_point(double r_u, const ScenarioConfig& cfg,
                             const AnalysisOptions& options) {
  AnalysisResult out;
  out.r_u = r_u;
  const LinkModel up = cfg.uplink_model();
  out.t1 = up.latency(r_u, cfg.altitude);
  if (out.t1 >= cfg.t_max) return out;  // GU itself is comm-limited

  const double residual = cfg.t_max - out.t1;
  const ServiceRadius service = service_radius_for(residual, cfg);
  out.service_radius = service.radius;
  out.service_capped = service.capped;

  const double upper = std::min(service.radius, cfg.cn_dist_radius);
  if (upper <= 0.0 || cfg.cn_density <= 0.0) return out;

  const LinkModel down = cfg.downlink_model();
  auto integrand = [&](double r_c) {
    const double remaining = residual - down.latency(r_c, cfg.altitude);
    return effective_density(1.0, r_c, service, remaining, cfg.compute_model,
                             cfg.data_size) *
           r_c;
  };

  // Radii where T_res crosses a jump or kink of the latency CDF.
  std::vector<double> breaks;
  for (double latency : cfg.compute_model.cdf_breakpoints(cfg.data_size)) {
    const double budget = residual - latency;
    if (budget > 0.0 && std::isfinite(budget)) {
      breaks.push_back(service_radius_for(budget, cfg).radius);
    }
  }

  const QuadratureResult q =
      integrate(integrand, 0.0, upper, breaks, options.inner);
  const double scale = 2.0 * std::numbers::pi * cfg.cn_density;
  out.lambda_intensity = scale * q.value;
  out.quadrature_error_estimate = scale * q.error_estimate;
  out.converged = q.converged;
  out.success_prob = success_from_intensity(out.lambda_intensity);
  return out;
}

double qualified_intensity(double r_u, const ScenarioConfig& cfg) {
  return analyze_point(r_u, cfg).lambda_intensity;
}

double success_probability(double r_u, const ScenarioConfig& cfg) {
  return analyze_point(r_u, cfg).success_prob;
}

AveragedResult average_over_request_zone(
    const std::function<double(double)>& p, double request_radius,
    const QuadratureOptions& options, std::span<const double> breakpoints) {
  const QuadratureResult q = integrate(
      [&p](double r) { return p(r) * r; }, 0.0, request_radius, breakpoints,
      options);
  const double norm = 2.0 / (request_radius * request_radius);
  return {q.value * norm, q.error_estimate * norm, q.converged, 0};
}

double max_servable_gu_distance(const ScenarioConfig& cfg) {
  const LinkModel up = cfg.uplink_model();
  const LinkModel down = cfg.downlink_model();
  const double budget = cfg.t_max - down.latency(0.0, cfg.altitude) -
                        fastest_compute(cfg);
  if (!std::isfinite(budget)) return kUnbounded;
  if (up.latency(0.0, cfg.altitude) >= budget) return 0.0;
  // t1 is increasing in r_u, so the edge is the radius solving t1 = budget.
  return max_service_radius(budget, up, cfg.altitude).radius;
}

AveragedResult average_success_probability(const ScenarioConfig& cfg,
                                           const AnalysisOptions& options) {
  std::map<double, AnalysisResult> memo;
  bool inner_converged = true;
  auto p = [&](double r_u) {
    auto it = memo.find(r_u);
    if (it == memo.end()) {
      it = memo.emplace(r_u, analyze_point(r_u, cfg, options)).first;
      inner_converged = inner_converged && it->second.converged;
    }
    return it->second.success_prob;
  };
  const double edge = max_servable_gu_distance(cfg);
  const double breaks[] = {edge};
  AveragedResult out =
      average_over_request_zone(p, cfg.request_radius, options.outer, breaks);
  out.converged = out.converged && inner_converged;
  out.intensity_evaluations = memo.size();
  return out;
}

}  // namespace uavcpn
