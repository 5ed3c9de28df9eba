#pragma once

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavcpn/channel.hpp"
#include "uavcpn/compute_model.hpp"

namespace uavcpn {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// Full experiment description in SI units (W, Hz, s, bits, m, nodes/m^2).
struct ScenarioConfig {
  double tx_power_gu = 100.0;
  double tx_power_uav = 100.0;
  double alpha_up = 2.0;
  double alpha_down = 2.0;
  double eta = 0.01;
  double bandwidth = 8.0e6;
  double noise_power = 1.0e-15;
  double data_size = 8.0e6;
  double t_max = 0.055;
  double gu_density = 5.0e-4;
  double cn_density = 5.0e-6;
  double request_radius = 200.0;
  double cn_dist_radius = kUnbounded;
  double env_b = 0.136;
  double env_c = 11.95;
  double env_b_down = 0.136;
  double env_c_down = 11.95;
  double altitude = 200.0;
  ComputeLatencyModel compute_model = ComputeLatencyModel::deterministic(2.0e-4);
  ChannelAveraging averaging = ChannelAveraging::kPower;

  ChannelParams uplink() const {
    return {tx_power_gu, alpha_up, eta, env_b, env_c};
  }
  ChannelParams downlink() const {
    return {tx_power_uav, alpha_down, eta, env_b_down, env_c_down};
  }
  LinkModel uplink_model() const {
    return {uplink(), bandwidth, noise_power, data_size, averaging};
  }
  LinkModel downlink_model() const {
    return {downlink(), bandwidth, noise_power, data_size, averaging};
  }
};

// One key of the flat config grammar.
struct ConfigKey {
  std::string_view name;           // document key, in human units
  std::string_view field;          // ScenarioConfig member it feeds
  std::string_view default_value;  // empty: derived from another key
  std::string_view unit;
};

// Every accepted key, in canonical order.
std::span<const ConfigKey> config_keys();

// Rejection naming the offending key(s).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Parsed but not yet normalized `key = value` document.
class ConfigDocument {
 public:
  // Grammar: one `key = value` per line, `#` starts a comment. Unknown and
  // duplicate keys are rejected.
  static ConfigDocument parse(std::string_view text);

  // Sets or replaces one key (used for command-line overrides).
  void set(std::string_view key, std::string_view value);
  // Parses "key=value".
  void set_assignment(std::string_view assignment);

  std::optional<std::string> get(std::string_view key) const;
  const std::map<std::string, std::string, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

// Normalizes to SI, fills defaults, validates. Throws ConfigError.
ScenarioConfig normalize(const ConfigDocument& doc);

// parse + normalize.
ScenarioConfig load_config(std::string_view text);
ScenarioConfig load_config_file(const std::string& path);

// Renders cfg back into the document grammar (human units, every key).
std::string to_document(const ScenarioConfig& cfg);

struct Violation {
  std::string field;
  double value;
  std::string constraint;
};

// Empty iff every invariant holds.
std::vector<Violation> validate(const ScenarioConfig& cfg);

// Environment variable naming the default config file.
inline constexpr const char* kConfigPathEnv = "UAVCPN_CONFIG";

}  // namespace uavcpn
