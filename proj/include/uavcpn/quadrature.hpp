#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace uavcpn {

struct QuadratureOptions {
  double rel_tol = 1.0e-8;
  double abs_tol = 1.0e-12;
  std::size_t max_intervals = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

// Globally adaptive 7/15-point Gauss-Kronrod: the interval with the largest
// |K15 - G7| is bisected until the summed estimate drops below
// max(rel_tol * |value|, abs_tol). Hitting max_intervals, or an interval too
// small to split, returns the current value with converged = false.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options = {});

// Same, with the initial partition split at the given points (those outside
// (a, b) are ignored). Use for known jumps or kinks of f.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, std::span<const double> breakpoints,
                           const QuadratureOptions& options = {});

}  // namespace uavcpn
