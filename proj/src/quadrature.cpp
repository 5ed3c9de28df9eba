#include "uavcpn/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace uavcpn {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod_15(const std::function<double(double)>& f, double a,
                         double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options) {
  return integrate(f, a, b, {}, options);
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, std::span<const double> breakpoints,
                           const QuadratureOptions& options) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  QuadratureResult result;
  if (a == b) return result;

  std::vector<double> edges{a};
  for (double p : breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Segment> heap;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const Segment s = gauss_kronrod_15(f, edges[i], edges[i + 1]);
    value += s.value;
    error += s.error;
    heap.push(s);
    result.evaluations += 15;
  }

  auto tolerance = [&] {
    return std::max(options.rel_tol * std::abs(value), options.abs_tol);
  };

  while (error > tolerance()) {
    if (heap.size() >= options.max_intervals) {
      result.converged = false;
      break;
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      result.converged = false;
      break;
    }
    heap.pop();
    const Segment left = gauss_kronrod_15(f, worst.a, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst.b);
    result.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the segments to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const auto& s : segments) {
    value += s.value;
    error += s.error;
  }
  result.value = value;
  result.error_estimate = error;
  return result;
}

}  // namespace uavcpn
