#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "uavcpn/analysis.hpp"
#include "uavcpn/sweep.hpp"

using namespace uavcpn;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// Data rows of a sweep CSV (comment lines and header dropped).
std::vector<std::vector<std::string>> csv_rows(std::istream& in,
                                               std::string* header) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      if (header) *header = line;
      continue;
    }
    rows.push_back(split(line, ','));
  }
  return rows;
}

SweepSpec altitude_spec(std::size_t points) {
  SweepSpec spec;
  spec.axes.push_back(SweepAxis::parse("altitude=100:1000:" + std::to_string(points)));
  return spec;
}

}  // namespace

TEST_CASE("axis grammar") {
  const auto a = SweepAxis::parse("altitude=100:1000:19");
  CHECK(a.parameter == SweepParameter::kAltitude);
  CHECK(a.points == 19);
  CHECK_FALSE(a.log_spacing);
  const auto v = a.values();
  REQUIRE(v.size() == 19);
  CHECK(v.front() == 100.0);
  CHECK(v.back() == 1000.0);
  CHECK(v[1] == doctest::Approx(150.0));

  const auto g = SweepAxis::parse("cn_density=0.1:10:3:log");
  CHECK(g.log_spacing);
  CHECK(g.values()[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(SweepAxis::parse(g.to_string()).values() == g.values());

  CHECK_THROWS_AS(SweepAxis::parse("altitude=100:1000"), std::invalid_argument);
  CHECK_THROWS_AS(SweepAxis::parse("height=1:2:3"), std::invalid_argument);
  CHECK_THROWS_AS(SweepAxis::parse("altitude=1:2:x"), std::invalid_argument);
  CHECK_THROWS_AS(SweepAxis::parse("altitude=1:2:3:cubic"), std::invalid_argument);
}

TEST_CASE("spec validation") {
  SweepSpec spec;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = altitude_spec(1);
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = altitude_spec(3);
  spec.axes.push_back(spec.axes.front());
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = altitude_spec(3);
  spec.axes.push_back(SweepAxis::parse("t_max=40:60:2"));
  spec.axes.push_back(SweepAxis::parse("cn_density=1:2:2"));
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = altitude_spec(3);
  spec.axes.front().start = -5.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("sweep values land in the config") {
  const ScenarioConfig base;
  CHECK(apply_sweep_value(base, SweepParameter::kAltitude, 321.0).altitude == 321.0);
  CHECK(apply_sweep_value(base, SweepParameter::kCnDensity, 2.0).cn_density ==
        doctest::Approx(2e-6));
  CHECK(apply_sweep_value(base, SweepParameter::kTMax, 40.0).t_max ==
        doctest::Approx(0.04));
  CHECK(apply_sweep_value(base, SweepParameter::kCnDistRadius, 750.0).cn_dist_radius ==
        750.0);
  const auto scaled = apply_sweep_value(base, SweepParameter::kComputeLatency, 3.0);
  CHECK(scaled.compute_model.mean(scaled.data_size) == doctest::Approx(3e-3));
  CHECK(scaled.compute_model.is_deterministic());
  CHECK_THROWS(apply_sweep_value(base, SweepParameter::kAltitude, -1.0));
}

TEST_CASE("one-axis theory sweep") {
  const ScenarioConfig base;
  const auto spec = altitude_spec(19);
  const auto records = run_sweep(base, spec);
  REQUIRE(records.size() == 19);
  for (const auto& r : records) {
    REQUIRE(r.swept.size() == 1);
    REQUIRE(r.theory_prob.has_value());
    CHECK_FALSE(r.mc_mean.has_value());
    CHECK(r.converged);
    ScenarioConfig c = base;
    c.altitude = r.swept[0];
    CHECK(*r.theory_prob == average_success_probability(c).success_prob);
  }
  const auto cols = sweep_columns(spec);
  CHECK(cols == std::vector<std::string>{"altitude", "theory_prob", "lambda_center",
                                         "service_radius_center_m", "wall_time_s"});
}

TEST_CASE("columns follow the engine") {
  auto spec = altitude_spec(2);
  spec.engine = Engine::kMonteCarlo;
  CHECK(sweep_columns(spec) ==
        std::vector<std::string>{"altitude", "mc_mean", "mc_ci", "lambda_center",
                                 "service_radius_center_m", "wall_time_s"});
  spec.engine = Engine::kBoth;
  CHECK(sweep_columns(spec).size() == 7);
  CHECK(parse_engine("mc") == Engine::kMonteCarlo);
  CHECK_THROWS(parse_engine("montecarlo"));
}

TEST_CASE("two-axis grid is row-major") {
  SweepSpec spec;
  spec.axes.push_back(SweepAxis::parse("altitude=100:300:3"));
  spec.axes.push_back(SweepAxis::parse("cn_density=0.5:2:4:log"));
  spec.jobs = 3;
  const auto records = run_sweep(ScenarioConfig{}, spec);
  REQUIRE(records.size() == 12);
  CHECK(records[0].swept[0] == 100.0);
  CHECK(records[3].swept[0] == 100.0);
  CHECK(records[4].swept[0] == 200.0);
  CHECK(records[1].swept[1] > records[0].swept[1]);
}

TEST_CASE("mc sweep with both engines is reproducible") {
  auto spec = altitude_spec(3);
  spec.engine = Engine::kBoth;
  spec.mc.n_trials = 50;
  spec.mc.gus_per_trial = 20;
  spec.mc.seed = 8;
  const auto a = run_sweep(ScenarioConfig{}, spec);
  spec.jobs = 3;
  const auto b = run_sweep(ScenarioConfig{}, spec);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(*a[i].mc_mean == *b[i].mc_mean);
    CHECK(*a[i].mc_ci == *b[i].mc_ci);
  }
}

TEST_CASE("CSV output matches the stored regression file") {
  const ScenarioConfig base;
  auto spec = altitude_spec(19);
  std::stringstream csv;
  write_sweep_csv(csv, base, spec, run_sweep(base, spec));

  std::string header;
  const auto got = csv_rows(csv, &header);
  std::ifstream golden_file(std::string(UAVCPN_TEST_DATA_DIR) + "/sweep_altitude.csv");
  REQUIRE(golden_file.good());
  std::string golden_header;
  const auto want = csv_rows(golden_file, &golden_header);
  CHECK(header == golden_header);
  REQUIRE(got.size() == want.size());
  const auto cols = split(header, ',');
  for (std::size_t i = 0; i < got.size(); ++i) {
    REQUIRE(got[i].size() == cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] == "wall_time_s") continue;
      const double g = std::stod(got[i][j]);
      const double w = std::stod(want[i][j]);
      CAPTURE(cols[j]);
      CHECK(std::abs(g - w) <= 1e-8 * std::max(1.0, std::abs(w)));
    }
  }

  std::stringstream again(csv.str());
  std::string line;
  bool has_config = false, has_version = false;
  while (std::getline(again, line)) {
    has_config = has_config || line.rfind("# config: t_max_ms = ", 0) == 0;
    has_version = has_version || line.rfind("# version = ", 0) == 0;
  }
  CHECK(has_config);
  CHECK(has_version);
}

TEST_CASE("JSON mirror") {
  auto spec = altitude_spec(2);
  std::stringstream js;
  write_sweep_json(js, ScenarioConfig{}, spec, run_sweep(ScenarioConfig{}, spec));
  const auto text = js.str();
  CHECK(text.find("\"theory_prob\"") != std::string::npos);
  CHECK(text.find("\"version\"") != std::string::npos);
}

TEST_CASE("comparison tolerance") {
  CHECK(agreement_tolerance(0.001) == 0.01);
  CHECK(agreement_tolerance(0.01) == doctest::Approx(0.03));
}
