#include "uavcpn/coverage.hpp"

#include <cmath>
#include <stdexcept>

namespace uavcpn {

ServiceRadius max_service_radius(double residual, const LinkModel& downlink,
                                 double altitude) {
  if (!std::isfinite(residual)) {
    throw std::invalid_argument("max_service_radius: non-finite residual");
  }
  ServiceRadius out;
  out.residual_budget = residual;
  if (residual <= downlink.latency(0.0, altitude)) return out;

  double lo = 0.0;
  double hi = altitude;
  while (downlink.latency(hi, altitude) <= residual) {
    if (hi >= kRadiusCap) {
      out.radius = kRadiusCap;
      out.capped = downlink.latency(kRadiusCap, altitude) < residual;
      return out;
    }
    lo = hi;
    hi = std::min(2.0 * hi, kRadiusCap);
  }
  // Invariant: t2(lo) <= residual < t2(hi).
  while (hi - lo > kRadiusTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (downlink.latency(mid, altitude) <= residual) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.radius = lo;
  return out;
}

double effective_density(double cn_density, double r_c,
                         const ServiceRadius& service,
                         double residual_after_t2,
                         const ComputeLatencyModel& model, double workload) {
  if (r_c > service.radius) return 0.0;
  return cn_density * latency_cdf(model, residual_after_t2, workload);
}

}  // namespace uavcpn
