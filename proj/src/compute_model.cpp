#include "uavcpn/compute_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "text_util.hpp"
#include "uavcpn/units.hpp"

namespace uavcpn {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("compute latency model: " + what);
}

void check(const DeterministicLatency& m) {
  require(std::isfinite(m.t_c) && m.t_c > 0.0, "t_c must be finite and > 0");
}

void check(const ExponentialLatency& m) {
  require(std::isfinite(m.mean) && m.mean > 0.0,
          "mean must be finite and > 0");
}

void check(const ShiftedExponentialLatency& m) {
  require(std::isfinite(m.floor) && m.floor >= 0.0,
          "floor must be finite and >= 0");
  require(std::isfinite(m.mean_excess) && m.mean_excess > 0.0,
          "mean_excess must be finite and > 0");
}

void check(const EmpiricalLatency& m) {
  require(!m.knots.empty(), "empirical table is empty");
  require(std::isfinite(m.reference_workload) && m.reference_workload >= 0.0,
          "reference workload must be finite and >= 0");
  double prev_latency = -1.0;
  double prev_prob = 0.0;
  for (const auto& k : m.knots) {
    require(std::isfinite(k.latency) && k.latency >= 0.0,
            "empirical latencies must be finite and >= 0");
    require(k.latency > prev_latency,
            "empirical latencies must be strictly increasing");
    require(k.cumulative_prob >= prev_prob && k.cumulative_prob <= 1.0,
            "empirical probabilities must be nondecreasing in [0, 1]");
    prev_latency = k.latency;
    prev_prob = k.cumulative_prob;
  }
  require(m.knots.back().cumulative_prob == 1.0,
          "empirical table must end at probability 1");
}

double workload_scale(const EmpiricalLatency& m, double workload) {
  return m.reference_workload > 0.0 ? workload / m.reference_workload : 1.0;
}

double to_ms(double seconds) { return seconds * 1000.0; }

double parse_ms(std::string_view text, std::string_view tag) {
  const auto v = detail::parse_double(text);
  if (!v) {
    throw std::invalid_argument("compute latency model '" + std::string(tag) +
                                "': malformed number '" + std::string(text) +
                                "'");
  }
  return *v * kSecondsPerMillisecond;
}

}  // namespace

ComputeLatencyModel::ComputeLatencyModel(Variant v) : v_(std::move(v)) {
  std::visit([](const auto& m) { check(m); }, v_);
}

ComputeLatencyModel ComputeLatencyModel::deterministic(double t_c) {
  return ComputeLatencyModel(DeterministicLatency{t_c});
}

ComputeLatencyModel ComputeLatencyModel::exponential(double mean) {
  return ComputeLatencyModel(ExponentialLatency{mean});
}

ComputeLatencyModel ComputeLatencyModel::shifted_exponential(
    double floor, double mean_excess) {
  return ComputeLatencyModel(ShiftedExponentialLatency{floor, mean_excess});
}

ComputeLatencyModel ComputeLatencyModel::empirical(
    std::vector<EmpiricalLatency::Knot> knots, double reference_workload) {
  return ComputeLatencyModel(
      EmpiricalLatency{std::move(knots), reference_workload});
}

ComputeLatencyModel ComputeLatencyModel::parse(std::string_view tag) {
  tag = detail::trim(tag);
  const auto colon = tag.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("compute latency model '" + std::string(tag) +
                                "': expected <kind>:<parameters>");
  }
  const auto kind = detail::trim(tag.substr(0, colon));
  const auto params = detail::trim(tag.substr(colon + 1));

  if (kind == "deterministic") return deterministic(parse_ms(params, tag));
  if (kind == "exponential") return exponential(parse_ms(params, tag));
  if (kind == "shifted_exponential") {
    const auto plus = params.find('+');
    if (plus == std::string_view::npos) {
      throw std::invalid_argument("compute latency model '" +
                                  std::string(tag) +
                                  "': expected <floor>+<mean_excess>");
    }
    return shifted_exponential(parse_ms(params.substr(0, plus), tag),
                               parse_ms(params.substr(plus + 1), tag));
  }
  if (kind == "empirical") {
    std::string_view table = params;
    double reference = 0.0;
    if (const auto at = params.find('@'); at != std::string_view::npos) {
      table = params.substr(0, at);
      const auto ref = detail::parse_double(params.substr(at + 1));
      if (!ref) {
        throw std::invalid_argument("compute latency model '" +
                                    std::string(tag) +
                                    "': malformed reference workload");
      }
      reference = *ref * kBitsPerMegabyte;
    }
    std::vector<EmpiricalLatency::Knot> knots;
    while (!table.empty()) {
      const auto comma = table.find(',');
      const auto item = table.substr(0, comma);
      const auto slash = item.find('/');
      const auto prob = slash == std::string_view::npos
                            ? std::nullopt
                            : detail::parse_double(item.substr(slash + 1));
      if (!prob) {
        throw std::invalid_argument("compute latency model '" +
                                    std::string(tag) +
                                    "': expected <ms>/<prob> pairs");
      }
      knots.push_back({parse_ms(item.substr(0, slash), tag), *prob});
      table = comma == std::string_view::npos ? std::string_view{}
                                              : table.substr(comma + 1);
    }
    return empirical(std::move(knots), reference);
  }
  throw std::invalid_argument("compute latency model: unknown kind '" +
                              std::string(kind) + "'");
}

std::string ComputeLatencyModel::to_string() const {
  using detail::format_double;
  return std::visit(
      Overloaded{
          [](const DeterministicLatency& m) {
            return "deterministic:" + format_double(to_ms(m.t_c));
          },
          [](const ExponentialLatency& m) {
            return "exponential:" + format_double(to_ms(m.mean));
          },
          [](const ShiftedExponentialLatency& m) {
            return "shifted_exponential:" + format_double(to_ms(m.floor)) +
                   "+" + format_double(to_ms(m.mean_excess));
          },
          [](const EmpiricalLatency& m) {
            std::string out = "empirical:";
            for (std::size_t i = 0; i < m.knots.size(); ++i) {
              if (i) out += ",";
              out += format_double(to_ms(m.knots[i].latency)) + "/" +
                     format_double(m.knots[i].cumulative_prob);
            }
            if (m.reference_workload > 0.0) {
              out += "@" + format_double(m.reference_workload / kBitsPerMegabyte);
            }
            return out;
          },
      },
      v_);
}

double ComputeLatencyModel::mean(double workload) const {
  return std::visit(
      Overloaded{
          [](const DeterministicLatency& m) { return m.t_c; },
          [](const ExponentialLatency& m) { return m.mean; },
          [](const ShiftedExponentialLatency& m) {
            return m.floor + m.mean_excess;
          },
          [workload](const EmpiricalLatency& m) {
            const auto& k = m.knots;
            double total = k.front().cumulative_prob * k.front().latency;
            for (std::size_t i = 1; i < k.size(); ++i) {
              total += (k[i].cumulative_prob - k[i - 1].cumulative_prob) *
                       0.5 * (k[i].latency + k[i - 1].latency);
            }
            return total * workload_scale(m, workload);
          },
      },
      v_);
}

std::vector<double> ComputeLatencyModel::cdf_breakpoints(
    double workload) const {
  return std::visit(
      Overloaded{
          [](const DeterministicLatency& m) {
            return std::vector<double>{m.t_c};
          },
          [](const ExponentialLatency&) { return std::vector<double>{}; },
          [](const ShiftedExponentialLatency& m) {
            return m.floor > 0.0 ? std::vector<double>{m.floor}
                                 : std::vector<double>{};
          },
          [workload](const EmpiricalLatency& m) {
            std::vector<double> out;
            const double s = workload_scale(m, workload);
            for (const auto& k : m.knots) {
              if (k.latency > 0.0) out.push_back(k.latency * s);
            }
            return out;
          },
      },
      v_);
}

ComputeLatencyModel ComputeLatencyModel::with_mean(double new_mean,
                                                   double workload) const {
  const double current = mean(workload);
  if (!(current > 0.0)) {
    throw std::invalid_argument("with_mean: model has zero mean");
  }
  const double s = new_mean / current;
  return std::visit(
      Overloaded{
          [&](const DeterministicLatency& m) {
            return ComputeLatencyModel(DeterministicLatency{m.t_c * s});
          },
          [&](const ExponentialLatency& m) {
            return ComputeLatencyModel(ExponentialLatency{m.mean * s});
          },
          [&](const ShiftedExponentialLatency& m) {
            return ComputeLatencyModel(
                ShiftedExponentialLatency{m.floor * s, m.mean_excess * s});
          },
          [&](const EmpiricalLatency& m) {
            EmpiricalLatency scaled = m;
            for (auto& k : scaled.knots) k.latency *= s;
            return ComputeLatencyModel(std::move(scaled));
          },
      },
      v_);
}

double latency_cdf(const ComputeLatencyModel& model, double t_res,
                   double workload) {
  if (t_res < 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [t_res](const DeterministicLatency& m) {
            return t_res >= m.t_c ? 1.0 : 0.0;
          },
          [t_res](const ExponentialLatency& m) {
            return -std::expm1(-t_res / m.mean);
          },
          [t_res](const ShiftedExponentialLatency& m) {
            if (t_res < m.floor) return 0.0;
            return -std::expm1(-(t_res - m.floor) / m.mean_excess);
          },
          [t_res, workload](const EmpiricalLatency& m) {
            const double s = workload_scale(m, workload);
            const auto& k = m.knots;
            if (t_res < k.front().latency * s) return 0.0;
            if (t_res >= k.back().latency * s) return 1.0;
            // First knot strictly above t_res; its predecessor is <= t_res.
            const auto hi = std::upper_bound(
                k.begin(), k.end(), t_res,
                [s](double t, const EmpiricalLatency::Knot& knot) {
                  return t < knot.latency * s;
                });
            const auto lo = hi - 1;
            const double frac =
                (t_res - lo->latency * s) / ((hi->latency - lo->latency) * s);
            return lo->cumulative_prob +
                   frac * (hi->cumulative_prob - lo->cumulative_prob);
          },
      },
      model.variant());
}

double sample_latency(const ComputeLatencyModel& model, RandomStream& rng,
                      double workload) {
  return std::visit(
      Overloaded{
          [](const DeterministicLatency& m) { return m.t_c; },
          [&rng](const ExponentialLatency& m) {
            return rng.exponential(m.mean);
          },
          [&rng](const ShiftedExponentialLatency& m) {
            return m.floor + rng.exponential(m.mean_excess);
          },
          [&rng, workload](const EmpiricalLatency& m) {
            const double s = workload_scale(m, workload);
            const auto& k = m.knots;
            const double u = rng.uniform();
            if (u < k.front().cumulative_prob) return k.front().latency * s;
            // Segment whose probability range [p_lo, p_hi) contains u; flat
            // segments are skipped because they carry no mass.
            const auto hi = std::upper_bound(
                k.begin(), k.end(), u,
                [](double p, const EmpiricalLatency::Knot& knot) {
                  return p < knot.cumulative_prob;
                });
            const auto lo = hi - 1;
            const double frac = (u - lo->cumulative_prob) /
                                (hi->cumulative_prob - lo->cumulative_prob);
            return (lo->latency + frac * (hi->latency - lo->latency)) * s;
          },
      },
      model.variant());
}

}  // namespace uavcpn
