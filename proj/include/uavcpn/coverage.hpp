#pragma once

#include "uavcpn/channel.hpp"
#include "uavcpn/compute_model.hpp"

namespace uavcpn {

// Radius beyond which the downlink inversion gives up.
inline constexpr double kRadiusCap = 1.0e7;  // m
inline constexpr double kRadiusTolerance = 1.0e-6;  // m

// Communication-constrained service radius for one residual budget.
struct ServiceRadius {
  double radius = 0.0;  // m
  bool capped = false;  // t2(kRadiusCap) still fits inside the budget
  double residual_budget = 0.0;  // s left for UAV->CN forwarding
};

// Largest r with t2(r) <= residual, by bracket doubling from the altitude and
// bisection to kRadiusTolerance. Returns radius 0 when residual <= t2(0).
// The returned radius always satisfies t2(radius) <= residual.
// Throws std::invalid_argument for a non-finite residual.
ServiceRadius max_service_radius(double residual, const LinkModel& downlink,
                                 double altitude);

// Density of CNs at distance r_c that meet both the communication and the
// computing deadline: cn_density * 1{r_c <= radius} * F_tc(residual_after_t2).
double effective_density(double cn_density, double r_c,
                         const ServiceRadius& service,
                         double residual_after_t2,
                         const ComputeLatencyModel& model, double workload);

}  // namespace uavcpn
