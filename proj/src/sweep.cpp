#include "uavcpn/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "text_util.hpp"
#include "uavcpn/analysis.hpp"
#include "uavcpn/units.hpp"

#ifndef UAVCPN_VERSION
#define UAVCPN_VERSION "0.0.0"
#endif

namespace uavcpn {

namespace {

constexpr std::pair<SweepParameter, std::string_view> kParameterNames[] = {
    {SweepParameter::kAltitude, "altitude"},
    {SweepParameter::kCnDensity, "cn_density"},
    {SweepParameter::kCnDistRadius, "cn_dist_radius"},
    {SweepParameter::kTMax, "t_max"},
    {SweepParameter::kComputeLatency, "compute_latency"},
};

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string optional_number(const std::optional<double>& v) {
  return v ? number(*v) : std::string();
}

SweepRecord evaluate_point(const ScenarioConfig& base, const SweepSpec& spec,
                           const std::vector<double>& values,
                           std::uint64_t point_index) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioConfig cfg = base;
  for (std::size_t i = 0; i < spec.axes.size(); ++i) {
    cfg = apply_sweep_value(cfg, spec.axes[i].parameter, values[i]);
  }
  SweepRecord rec;
  rec.swept = values;
  const AnalysisResult center = analyze_point(0.0, cfg);
  rec.lambda_center = center.lambda_intensity;
  rec.service_radius_center = center.service_radius;
  rec.converged = center.converged;
  if (spec.engine != Engine::kMonteCarlo) {
    const AveragedResult avg = average_success_probability(cfg);
    rec.theory_prob = avg.success_prob;
    rec.converged = rec.converged && avg.converged;
  }
  if (spec.engine != Engine::kTheory) {
    SimulationOptions mc = spec.mc;
    mc.jobs = 1;  // parallelism is spent across grid points
    // Each grid point gets its own seed so that points are independent.
    mc.seed = spec.mc.seed + point_index;
    const Estimate est = estimate_success(cfg, mc);
    rec.mc_mean = est.mean;
    rec.mc_ci = est.ci_halfwidth;
  }
  rec.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return rec;
}

}  // namespace

const char* tool_version() { return UAVCPN_VERSION; }

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::kTheory: return "theory";
    case Engine::kMonteCarlo: return "mc";
    case Engine::kBoth: return "both";
  }
  return "?";
}

Engine parse_engine(std::string_view text) {
  if (text == "theory") return Engine::kTheory;
  if (text == "mc") return Engine::kMonteCarlo;
  if (text == "both") return Engine::kBoth;
  throw std::invalid_argument("unknown engine '" + std::string(text) +
                              "' (expected theory, mc or both)");
}

std::string_view to_string(SweepParameter parameter) {
  for (const auto& [p, name] : kParameterNames) {
    if (p == parameter) return name;
  }
  return "?";
}

SweepParameter parse_sweep_parameter(std::string_view text) {
  for (const auto& [p, name] : kParameterNames) {
    if (name == text) return p;
  }
  throw std::invalid_argument(
      "unknown sweep parameter '" + std::string(text) +
      "' (expected altitude, cn_density, cn_dist_radius, t_max or "
      "compute_latency)");
}

SweepAxis SweepAxis::parse(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("sweep axis '" + std::string(text) +
                                "': expected name=start:stop:points[:log]");
  }
  SweepAxis axis;
  axis.parameter = parse_sweep_parameter(detail::trim(text.substr(0, eq)));
  std::vector<std::string_view> parts;
  auto rest = text.substr(eq + 1);
  while (true) {
    const auto colon = rest.find(':');
    parts.push_back(detail::trim(rest.substr(0, colon)));
    if (colon == std::string_view::npos) break;
    rest = rest.substr(colon + 1);
  }
  if (parts.size() < 3 || parts.size() > 4) {
    throw std::invalid_argument("sweep axis '" + std::string(text) +
                                "': expected name=start:stop:points[:log]");
  }
  const auto start = detail::parse_double(parts[0]);
  const auto stop = detail::parse_double(parts[1]);
  const auto points = detail::parse_double(parts[2]);
  if (!start || !stop || !points || *points != std::floor(*points) ||
      *points < 0) {
    throw std::invalid_argument("sweep axis '" + std::string(text) +
                                "': malformed range");
  }
  axis.start = *start;
  axis.stop = *stop;
  axis.points = static_cast<std::size_t>(*points);
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      axis.log_spacing = true;
    } else if (parts[3] != "lin") {
      throw std::invalid_argument("sweep axis '" + std::string(text) +
                                  "': spacing must be lin or log");
    }
  }
  return axis;
}

std::string SweepAxis::to_string() const {
  return std::string(uavcpn::to_string(parameter)) + "=" +
         detail::format_double(start) + ":" + detail::format_double(stop) +
         ":" + std::to_string(points) + (log_spacing ? ":log" : ":lin");
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double f =
        points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = log_spacing
                 ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                 : start + f * (stop - start);
  }
  if (points > 1) out.back() = stop;
  return out;
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg,
                                 SweepParameter parameter, double value) {
  ScenarioConfig out = cfg;
  switch (parameter) {
    case SweepParameter::kAltitude:
      out.altitude = value;
      break;
    case SweepParameter::kCnDensity:
      out.cn_density = value / kSquareMetersPerSquareKm;
      break;
    case SweepParameter::kCnDistRadius:
      out.cn_dist_radius = value;
      break;
    case SweepParameter::kTMax:
      out.t_max = value * kSecondsPerMillisecond;
      break;
    case SweepParameter::kComputeLatency:
      out.compute_model = cfg.compute_model.with_mean(
          value * kSecondsPerMillisecond, cfg.data_size);
      break;
  }
  if (const auto v = validate(out); !v.empty()) {
    throw std::invalid_argument("sweep value " + number(value) + " for " +
                                std::string(to_string(parameter)) +
                                " violates " + v.front().field + ": " +
                                v.front().constraint);
  }
  return out;
}

void SweepSpec::validate() const {
  if (axes.empty() || axes.size() > 2) {
    throw std::invalid_argument("sweep needs one or two axes");
  }
  if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
    throw std::invalid_argument("sweep axes must differ");
  }
  for (const auto& a : axes) {
    if (a.points < 2) {
      throw std::invalid_argument("sweep axis " + a.to_string() +
                                  ": needs at least 2 points");
    }
    if (!(a.start > 0.0 && a.stop > 0.0) || !std::isfinite(a.start) ||
        !std::isfinite(a.stop)) {
      throw std::invalid_argument("sweep axis " + a.to_string() +
                                  ": range must be finite and positive");
    }
  }
  if (engine != Engine::kTheory && (mc.n_trials < 1 || mc.gus_per_trial < 1)) {
    throw std::invalid_argument("sweep: trials and gus must be >= 1");
  }
}

std::vector<SweepRecord> run_sweep(const ScenarioConfig& base,
                                   const SweepSpec& spec) {
  spec.validate();
  std::vector<std::vector<double>> grid{{}};
  for (const auto& axis : spec.axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : grid) {
      for (double v : axis.values()) {
        auto row = prefix;
        row.push_back(v);
        next.push_back(std::move(row));
      }
    }
    grid = std::move(next);
  }
  // Fail on invalid values before spending time on any point.
  for (const auto& values : grid) {
    ScenarioConfig cfg = base;
    for (std::size_t i = 0; i < spec.axes.size(); ++i) {
      cfg = apply_sweep_value(cfg, spec.axes[i].parameter, values[i]);
    }
  }
  std::vector<SweepRecord> records(grid.size());
  detail::parallel_for(grid.size(), spec.jobs, [&](std::uint64_t i) {
    records[i] = evaluate_point(base, spec, grid[i], i);
  });
  return records;
}

std::vector<std::string> sweep_columns(const SweepSpec& spec) {
  std::vector<std::string> cols;
  for (const auto& a : spec.axes) cols.emplace_back(to_string(a.parameter));
  if (spec.engine != Engine::kMonteCarlo) cols.emplace_back("theory_prob");
  if (spec.engine != Engine::kTheory) {
    cols.emplace_back("mc_mean");
    cols.emplace_back("mc_ci");
  }
  cols.emplace_back("lambda_center");
  cols.emplace_back("service_radius_center_m");
  cols.emplace_back("wall_time_s");
  return cols;
}

void write_sweep_csv(std::ostream& out, const ScenarioConfig& base,
                     const SweepSpec& spec,
                     const std::vector<SweepRecord>& records) {
  out << "# uavcpn sweep\n";
  out << "# version = " << tool_version() << '\n';
  out << "# engine = " << to_string(spec.engine) << '\n';
  for (const auto& a : spec.axes) out << "# axis = " << a.to_string() << '\n';
  if (spec.engine != Engine::kTheory) {
    out << "# trials = " << spec.mc.n_trials << '\n';
    out << "# gus = " << spec.mc.gus_per_trial << '\n';
    out << "# seed = " << spec.mc.seed << '\n';
    out << "# confidence_level = " << number(spec.mc.confidence_level) << '\n';
  }
  std::istringstream doc(to_document(base));
  for (std::string line; std::getline(doc, line);) {
    out << "# config: " << line << '\n';
  }
  const auto cols = sweep_columns(spec);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << cols[i];
  }
  out << '\n';
  for (const auto& r : records) {
    for (double v : r.swept) out << number(v) << ',';
    if (spec.engine != Engine::kMonteCarlo) {
      out << optional_number(r.theory_prob) << ',';
    }
    if (spec.engine != Engine::kTheory) {
      out << optional_number(r.mc_mean) << ',' << optional_number(r.mc_ci)
          << ',';
    }
    out << number(r.lambda_center) << ',' << number(r.service_radius_center)
        << ',' << number(r.wall_time) << '\n';
  }
}

void write_sweep_json(std::ostream& out, const ScenarioConfig& base,
                      const SweepSpec& spec,
                      const std::vector<SweepRecord>& records) {
  nlohmann::ordered_json j;
  j["version"] = tool_version();
  j["engine"] = std::string(to_string(spec.engine));
  j["axes"] = nlohmann::json::array();
  for (const auto& a : spec.axes) j["axes"].push_back(a.to_string());
  if (spec.engine != Engine::kTheory) {
    j["mc"] = {{"trials", spec.mc.n_trials},
               {"gus", spec.mc.gus_per_trial},
               {"seed", spec.mc.seed},
               {"confidence_level", spec.mc.confidence_level}};
  }
  auto& config = j["config"];
  config = nlohmann::ordered_json::object();
  std::istringstream doc(to_document(base));
  for (std::string line; std::getline(doc, line);) {
    const auto eq = line.find(" = ");
    config[line.substr(0, eq)] = line.substr(eq + 3);
  }
  const auto cols = sweep_columns(spec);
  j["columns"] = cols;
  auto& rows = j["rows"];
  rows = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json row;
    for (std::size_t i = 0; i < spec.axes.size(); ++i) row[cols[i]] = r.swept[i];
    if (spec.engine != Engine::kMonteCarlo) row["theory_prob"] = *r.theory_prob;
    if (spec.engine != Engine::kTheory) {
      row["mc_mean"] = *r.mc_mean;
      row["mc_ci"] = *r.mc_ci;
    }
    row["lambda_center"] = r.lambda_center;
    row["service_radius_center_m"] = r.service_radius_center;
    row["wall_time_s"] = r.wall_time;
    rows.push_back(std::move(row));
  }
  out << j.dump(2) << '\n';
}

double agreement_tolerance(double ci_halfwidth) {
  return std::max(0.01, 3.0 * ci_halfwidth);
}

std::vector<CompareRow> run_compare(const ScenarioConfig& base,
                                    const std::vector<double>& altitudes,
                                    const SimulationOptions& mc) {
  std::vector<CompareRow> rows;
  rows.reserve(altitudes.size());
  for (double h : altitudes) {
    const ScenarioConfig cfg =
        apply_sweep_value(base, SweepParameter::kAltitude, h);
    CompareRow row;
    row.altitude = h;
    const AveragedResult theory = average_success_probability(cfg);
    row.theory = theory.success_prob;
    row.converged = theory.converged;
    const Estimate est = estimate_success(cfg, mc);
    row.mc_mean = est.mean;
    row.mc_ci = est.ci_halfwidth;
    row.abs_diff = std::abs(row.theory - row.mc_mean);
    row.tolerance = agreement_tolerance(row.mc_ci);
    row.pass = row.abs_diff <= row.tolerance;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace uavcpn
