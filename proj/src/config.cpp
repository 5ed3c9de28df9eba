#include "uavcpn/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "text_util.hpp"
#include "uavcpn/units.hpp"

namespace uavcpn {

namespace {

constexpr std::array<ConfigKey, 20> kKeys{{
    {"tx_power_gu_dbw", "tx_power_gu", "20", "dBW"},
    {"tx_power_uav_dbw", "tx_power_uav", "20", "dBW"},
    {"pathloss_exp_up", "alpha_up", "2", ""},
    {"pathloss_exp_down", "alpha_down", "", ""},  // follows pathloss_exp_up
    {"nlos_attenuation_db", "eta", "20", "dB"},
    {"bandwidth_mhz", "bandwidth", "8", "MHz"},
    {"noise_dbm", "noise_power", "-120", "dBm"},
    {"data_size_mb", "data_size", "1", "MB"},
    {"t_max_ms", "t_max", "55", "ms"},
    {"gu_density_per_km2", "gu_density", "500", "nodes/km^2"},
    {"cn_density_per_km2", "cn_density", "5", "nodes/km^2"},
    {"compute_latency_model", "compute_model", "deterministic:0.2", "ms"},
    {"request_radius_m", "request_radius", "200", "m"},
    {"cn_dist_radius_m", "cn_dist_radius", "inf", "m"},
    {"env_b", "env_b", "0.136", ""},
    {"env_c", "env_c", "11.95", ""},
    {"env_b_down", "env_b_down", "", ""},  // follows env_b
    {"env_c_down", "env_c_down", "", ""},  // follows env_c
    {"uav_altitude_m", "altitude", "200", "m"},
    {"channel_averaging", "averaging", "power_avg", ""},
}};

const ConfigKey* find_key(std::string_view name) {
  for (const auto& k : kKeys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

std::string key_for_field(std::string_view field) {
  for (const auto& k : kKeys) {
    if (k.field == field) return std::string(k.name);
  }
  return std::string(field);
}

class Reader {
 public:
  explicit Reader(const ConfigDocument& doc) : doc_(doc) {}

  std::string text(std::string_view key, std::string_view fallback) const {
    if (auto v = doc_.get(key)) return *v;
    if (fallback.empty()) {
      return std::string(find_key(key)->default_value);
    }
    return std::string(fallback);
  }

  double number(std::string_view key, std::string_view fallback = {}) const {
    const auto raw = text(key, fallback);
    const auto v = detail::parse_double(raw);
    if (!v || std::isnan(*v)) {
      throw ConfigError(std::string(key), "config key '" + std::string(key) +
                                              "': malformed number '" + raw +
                                              "'");
    }
    return *v;
  }

  // Numbers that must be finite to be converted (dB values and the like).
  double finite(std::string_view key, std::string_view fallback = {}) const {
    const double v = number(key, fallback);
    if (!std::isfinite(v)) {
      throw ConfigError(std::string(key), "config key '" + std::string(key) +
                                              "': value must be finite");
    }
    return v;
  }

 private:
  const ConfigDocument& doc_;
};

}  // namespace

std::span<const ConfigKey> config_keys() { return kKeys; }

ConfigDocument ConfigDocument::parse(std::string_view text) {
  ConfigDocument doc;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "config line " + std::to_string(line_no) +
                                ": expected 'key = value'");
    }
    const auto key = detail::trim(line.substr(0, eq));
    if (doc.entries_.count(key) != 0) {
      throw ConfigError(std::string(key),
                        "config key '" + std::string(key) + "' given twice");
    }
    doc.set(key, line.substr(eq + 1));
  }
  return doc;
}

void ConfigDocument::set(std::string_view key, std::string_view value) {
  key = detail::trim(key);
  value = detail::trim(value);
  if (find_key(key) == nullptr) {
    throw ConfigError(std::string(key),
                      "unknown config key '" + std::string(key) + "'");
  }
  if (value.empty()) {
    throw ConfigError(std::string(key),
                      "config key '" + std::string(key) + "' has no value");
  }
  entries_.insert_or_assign(std::string(key), std::string(value));
}

void ConfigDocument::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(std::string(assignment),
                      "override '" + std::string(assignment) +
                          "': expected key=value");
  }
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

std::optional<std::string> ConfigDocument::get(std::string_view key) const {
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

ScenarioConfig normalize(const ConfigDocument& doc) {
  const Reader in(doc);
  ScenarioConfig cfg;
  cfg.tx_power_gu = dbw_to_watts(in.finite("tx_power_gu_dbw"));
  cfg.tx_power_uav = dbw_to_watts(in.finite("tx_power_uav_dbw"));
  cfg.alpha_up = in.number("pathloss_exp_up");
  cfg.alpha_down =
      in.number("pathloss_exp_down", in.text("pathloss_exp_up", {}));
  cfg.eta = db_to_linear(-in.finite("nlos_attenuation_db"));
  cfg.bandwidth = in.number("bandwidth_mhz") * kHertzPerMegahertz;
  cfg.noise_power = dbm_to_watts(in.finite("noise_dbm"));
  cfg.data_size = in.number("data_size_mb") * kBitsPerMegabyte;
  cfg.t_max = in.number("t_max_ms") * kSecondsPerMillisecond;
  cfg.gu_density = in.number("gu_density_per_km2") / kSquareMetersPerSquareKm;
  cfg.cn_density = in.number("cn_density_per_km2") / kSquareMetersPerSquareKm;
  cfg.request_radius = in.number("request_radius_m");
  cfg.cn_dist_radius = in.number("cn_dist_radius_m");
  cfg.env_b = in.number("env_b");
  cfg.env_c = in.number("env_c");
  cfg.env_b_down = in.number("env_b_down", in.text("env_b", {}));
  cfg.env_c_down = in.number("env_c_down", in.text("env_c", {}));
  cfg.altitude = in.number("uav_altitude_m");
  try {
    cfg.compute_model =
        ComputeLatencyModel::parse(in.text("compute_latency_model", {}));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("compute_latency_model",
                      std::string("config key 'compute_latency_model': ") +
                          e.what());
  }
  try {
    cfg.averaging = parse_channel_averaging(in.text("channel_averaging", {}));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("channel_averaging",
                      std::string("config key 'channel_averaging': ") +
                          e.what());
  }

  const auto violations = validate(cfg);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid configuration:";
    for (const auto& v : violations) {
      msg << "\n  " << key_for_field(v.field) << " (" << v.field << " = "
          << v.value << "): " << v.constraint;
    }
    throw ConfigError(key_for_field(violations.front().field), msg.str());
  }
  return cfg;
}

ScenarioConfig load_config(std::string_view text) {
  return normalize(ConfigDocument::parse(text));
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

std::string to_document(const ScenarioConfig& cfg) {
  using detail::format_double;
  std::ostringstream out;
  auto line = [&out](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  line("tx_power_gu_dbw", format_double(linear_to_db(cfg.tx_power_gu)));
  line("tx_power_uav_dbw", format_double(linear_to_db(cfg.tx_power_uav)));
  line("pathloss_exp_up", format_double(cfg.alpha_up));
  line("pathloss_exp_down", format_double(cfg.alpha_down));
  line("nlos_attenuation_db", format_double(-linear_to_db(cfg.eta)));
  line("bandwidth_mhz", format_double(cfg.bandwidth / kHertzPerMegahertz));
  line("noise_dbm", format_double(linear_to_db(cfg.noise_power * 1000.0)));
  line("data_size_mb", format_double(cfg.data_size / kBitsPerMegabyte));
  line("t_max_ms", format_double(cfg.t_max / kSecondsPerMillisecond));
  line("gu_density_per_km2",
       format_double(cfg.gu_density * kSquareMetersPerSquareKm));
  line("cn_density_per_km2",
       format_double(cfg.cn_density * kSquareMetersPerSquareKm));
  line("compute_latency_model", cfg.compute_model.to_string());
  line("request_radius_m", format_double(cfg.request_radius));
  line("cn_dist_radius_m", format_double(cfg.cn_dist_radius));
  line("env_b", format_double(cfg.env_b));
  line("env_c", format_double(cfg.env_c));
  line("env_b_down", format_double(cfg.env_b_down));
  line("env_c_down", format_double(cfg.env_c_down));
  line("uav_altitude_m", format_double(cfg.altitude));
  line("channel_averaging", std::string(to_string(cfg.averaging)));
  return out.str();
}

std::vector<Violation> validate(const ScenarioConfig& cfg) {
  std::vector<Violation> out;
  auto need = [&out](bool ok, std::string_view field, double value,
                     std::string_view constraint) {
    if (!ok) out.push_back({std::string(field), value, std::string(constraint)});
  };
  auto positive = [&need](std::string_view field, double v) {
    need(std::isfinite(v) && v > 0.0, field, v, "must be finite and > 0");
  };
  auto non_negative = [&need](std::string_view field, double v) {
    need(std::isfinite(v) && v >= 0.0, field, v, "must be finite and >= 0");
  };

  positive("tx_power_gu", cfg.tx_power_gu);
  positive("tx_power_uav", cfg.tx_power_uav);
  need(std::isfinite(cfg.alpha_up) && cfg.alpha_up >= 1.0, "alpha_up",
       cfg.alpha_up, "must be finite and >= 1");
  need(std::isfinite(cfg.alpha_down) && cfg.alpha_down >= 1.0, "alpha_down",
       cfg.alpha_down, "must be finite and >= 1");
  need(cfg.eta > 0.0 && cfg.eta <= 1.0, "eta", cfg.eta,
       "must lie in (0, 1] (attenuation in dB must be >= 0)");
  positive("bandwidth", cfg.bandwidth);
  positive("noise_power", cfg.noise_power);
  positive("data_size", cfg.data_size);
  need(cfg.t_max > 0.0, "t_max", cfg.t_max, "must be > 0");
  non_negative("gu_density", cfg.gu_density);
  non_negative("cn_density", cfg.cn_density);
  positive("request_radius", cfg.request_radius);
  need(cfg.cn_dist_radius >= 0.0, "cn_dist_radius", cfg.cn_dist_radius,
       "must be >= 0 (inf for unbounded)");
  positive("env_b", cfg.env_b);
  positive("env_c", cfg.env_c);
  positive("env_b_down", cfg.env_b_down);
  positive("env_c_down", cfg.env_c_down);
  positive("altitude", cfg.altitude);
  return out;
}

}  // namespace uavcpn
