#include "uavcpn/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace uavcpn {

std::string_view to_string(ChannelAveraging mode) {
  return mode == ChannelAveraging::kPower ? "power_avg" : "rate_avg";
}

ChannelAveraging parse_channel_averaging(std::string_view text) {
  if (text == "power_avg") return ChannelAveraging::kPower;
  if (text == "rate_avg") return ChannelAveraging::kRate;
  throw std::invalid_argument("unknown channel averaging mode '" +
                              std::string(text) +
                              "' (expected power_avg or rate_avg)");
}

std::string check_channel_params(const ChannelParams& p) {
  if (!(std::isfinite(p.tx_power) && p.tx_power > 0.0))
    return "tx_power must be finite and > 0";
  if (!(std::isfinite(p.alpha) && p.alpha >= 1.0))
    return "path-loss exponent must be >= 1";
  if (!(p.eta > 0.0 && p.eta <= 1.0)) return "eta must lie in (0, 1]";
  if (!(std::isfinite(p.env_b) && p.env_b > 0.0))
    return "env_b must be finite and > 0";
  if (!(std::isfinite(p.env_c) && p.env_c > 0.0))
    return "env_c must be finite and > 0";
  return {};
}

double elevation_deg(const LinkGeometry& geom) {
  return std::atan2(geom.altitude, geom.horizontal_distance) * 180.0 /
         std::numbers::pi;
}

double los_probability(const LinkGeometry& geom, double env_b, double env_c) {
  const double theta = elevation_deg(geom);
  return 1.0 / (1.0 + env_c * std::exp(-env_b * (theta - env_c)));
}

double path_gain_power(const ChannelParams& params, const LinkGeometry& geom) {
  const double d2 = geom.horizontal_distance * geom.horizontal_distance +
                    geom.altitude * geom.altitude;
  return params.tx_power * std::pow(d2, -0.5 * params.alpha);
}

double expected_received_power(const ChannelParams& params,
                               const LinkGeometry& geom) {
  const double p_los = los_probability(geom, params.env_b, params.env_c);
  return (p_los + params.eta * (1.0 - p_los)) * path_gain_power(params, geom);
}

double shannon_rate(double bandwidth, double snr) {
  return bandwidth * std::log1p(snr) / std::numbers::ln2;
}

double link_rate(const ChannelParams& params, const LinkGeometry& geom,
                 double bandwidth, double noise_power, ChannelAveraging mode) {
  if (mode == ChannelAveraging::kPower) {
    return shannon_rate(bandwidth,
                        expected_received_power(params, geom) / noise_power);
  }
  const double p_los = los_probability(geom, params.env_b, params.env_c);
  const double snr = path_gain_power(params, geom) / noise_power;
  return p_los * shannon_rate(bandwidth, snr) +
         (1.0 - p_los) * shannon_rate(bandwidth, params.eta * snr);
}

double transmission_latency(double data_size, const ChannelParams& params,
                            const LinkGeometry& geom, double bandwidth,
                            double noise_power, ChannelAveraging mode) {
  if (data_size == 0.0) return 0.0;
  const double rate = link_rate(params, geom, bandwidth, noise_power, mode);
  if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
  return data_size / rate;
}

}  // namespace uavcpn
