#include "uavcpn/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "text_util.hpp"
#include "uavcpn/analysis.hpp"
#include "uavcpn/montecarlo.hpp"
#include "uavcpn/sweep.hpp"

namespace uavcpn {

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

SimulationOptions simulation_options(const CommonOptions& o) {
  SimulationOptions mc;
  mc.n_trials = o.trials;
  mc.gus_per_trial = o.gus;
  mc.seed = o.seed;
  mc.jobs = o.jobs;
  return mc;
}

std::vector<double> parse_altitudes(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    return SweepAxis::parse("altitude=" + text).values();
  }
  std::vector<double> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto v = detail::parse_double(rest.substr(0, comma));
    if (!v) throw std::invalid_argument("malformed altitude list '" + text + "'");
    out.push_back(*v);
    rest = comma == std::string_view::npos ? std::string_view{}
                                           : rest.substr(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("empty altitude list");
  return out;
}

// Writes `text` to the output file when one was given.
bool write_output(const CommonOptions& o, const std::string& text,
                  std::ostream& err) {
  if (!o.output) return true;
  std::ofstream file(*o.output);
  file << text;
  if (!file) {
    err << "error: cannot write '" << *o.output << "'\n";
    return false;
  }
  return true;
}

}  // namespace

ScenarioConfig resolve_config(const CommonOptions& options) {
  std::optional<std::string> path = options.config_path;
  if (!path) {
    if (const char* env = std::getenv(kConfigPathEnv); env && *env) path = env;
  }
  ConfigDocument doc;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("", "cannot open config file '" + *path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    doc = ConfigDocument::parse(buf.str());
  }
  for (const auto& o : options.overrides) doc.set_assignment(o);
  return normalize(doc);
}

int cmd_analyze(const CommonOptions& options, std::ostream& out,
                std::ostream& err) {
  ScenarioConfig cfg;
  try {
    cfg = resolve_config(options);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  const AveragedResult avg = average_success_probability(cfg);
  const double r = cfg.request_radius;
  std::vector<AnalysisResult> points;
  for (double r_u : {0.0, 0.5 * r, r}) points.push_back(analyze_point(r_u, cfg));
  bool converged = avg.converged;
  for (const auto& p : points) converged = converged && p.converged;

  nlohmann::ordered_json j;
  j["average_success_probability"] = avg.success_prob;
  j["quadrature_error_estimate"] = avg.error_estimate;
  j["converged"] = converged;
  j["channel_averaging"] = std::string(to_string(cfg.averaging));
  j["points"] = nlohmann::json::array();
  for (const auto& p : points) {
    j["points"].push_back({{"r_u_m", p.r_u},
                           {"t1_s", p.t1},
                           {"service_radius_m", p.service_radius},
                           {"service_capped", p.service_capped},
                           {"lambda", p.lambda_intensity},
                           {"success_prob", p.success_prob}});
  }

  if (options.json) {
    out << j.dump(2) << '\n';
  } else {
    out << "average_success_probability = " << number(avg.success_prob) << '\n';
    out << "quadrature_error_estimate = " << number(avg.error_estimate) << '\n';
    out << "converged = " << (converged ? "true" : "false") << '\n';
    out << "altitude_m = " << number(cfg.altitude) << '\n';
    out << "channel_averaging = " << to_string(cfg.averaging) << '\n';
    out << "r_u_m,t1_s,service_radius_m,lambda,success_prob\n";
    for (const auto& p : points) {
      out << number(p.r_u) << ',' << number(p.t1) << ','
          << number(p.service_radius) << ',' << number(p.lambda_intensity)
          << ',' << number(p.success_prob) << '\n';
    }
  }
  if (!write_output(options, j.dump(2) + "\n", err)) return kExitInvalid;
  return converged ? kExitOk : kExitNotConverged;
}

int cmd_simulate(const CommonOptions& options, std::ostream& out,
                 std::ostream& err) {
  ScenarioConfig cfg;
  Estimate est;
  try {
    cfg = resolve_config(options);
    est = estimate_success(cfg, simulation_options(options));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  nlohmann::ordered_json j;
  j["mc_mean"] = est.mean;
  j["mc_ci"] = est.ci_halfwidth;
  j["confidence_level"] = est.confidence_level;
  j["n_trials"] = est.n_trials;
  j["gus_per_trial"] = options.gus;
  j["seed"] = est.seed;
  if (options.json) {
    out << j.dump(2) << '\n';
  } else {
    out << "mc_mean = " << number(est.mean) << '\n';
    out << "mc_ci = " << number(est.ci_halfwidth) << '\n';
    out << "confidence_level = " << number(est.confidence_level) << '\n';
    out << "n_trials = " << est.n_trials << '\n';
    out << "gus_per_trial = " << options.gus << '\n';
    out << "seed = " << est.seed << '\n';
  }
  if (!write_output(options, j.dump(2) + "\n", err)) return kExitInvalid;
  return kExitOk;
}

int cmd_compare(const CommonOptions& options, const std::string& altitudes,
                std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  std::vector<double> grid;
  std::vector<CompareRow> rows;
  try {
    cfg = resolve_config(options);
    grid = parse_altitudes(altitudes);
    rows = run_compare(cfg, grid, simulation_options(options));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  std::ostringstream table;
  table << "altitude_m,theory_prob,mc_mean,mc_ci,abs_diff,tolerance,pass\n";
  bool all_pass = true;
  bool converged = true;
  for (const auto& r : rows) {
    table << number(r.altitude) << ',' << number(r.theory) << ','
          << number(r.mc_mean) << ',' << number(r.mc_ci) << ','
          << number(r.abs_diff) << ',' << number(r.tolerance) << ','
          << (r.pass ? "pass" : "FAIL") << '\n';
    all_pass = all_pass && r.pass;
    converged = converged && r.converged;
  }
  out << table.str();
  out << "# " << std::count_if(rows.begin(), rows.end(),
                               [](const CompareRow& r) { return r.pass; })
      << '/' << rows.size() << " altitudes agree\n";
  if (!write_output(options, table.str(), err)) return kExitInvalid;
  if (!all_pass) return kExitComparisonFailed;
  return converged ? kExitOk : kExitNotConverged;
}

int cmd_sweep(const CommonOptions& options,
              const std::vector<std::string>& axes, const std::string& engine,
              const std::optional<std::string>& json_output, std::ostream& out,
              std::ostream& err) {
  ScenarioConfig cfg;
  SweepSpec spec;
  std::vector<SweepRecord> records;
  try {
    cfg = resolve_config(options);
    for (const auto& a : axes) spec.axes.push_back(SweepAxis::parse(a));
    spec.engine = parse_engine(engine);
    spec.mc = simulation_options(options);
    spec.jobs = options.jobs;
    spec.validate();
    records = run_sweep(cfg, spec);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  if (options.output) {
    std::ofstream file(*options.output);
    write_sweep_csv(file, cfg, spec, records);
    if (!file) {
      err << "error: cannot write '" << *options.output << "'\n";
      return kExitInvalid;
    }
  } else {
    write_sweep_csv(out, cfg, spec, records);
  }
  if (json_output) {
    std::ofstream file(*json_output);
    write_sweep_json(file, cfg, spec, records);
    if (!file) {
      err << "error: cannot write '" << *json_output << "'\n";
      return kExitInvalid;
    }
  }
  const bool converged =
      std::all_of(records.begin(), records.end(),
                  [](const SweepRecord& r) { return r.converged; });
  return converged ? kExitOk : kExitNotConverged;
}

}  // namespace uavcpn
