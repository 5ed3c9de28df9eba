#pragma once

// Probabilistic air-ground channel: elevation-dependent LoS probability,
// LoS/NLoS path loss, Shannon rate and per-hop transmission latency.

#include <string>
#include <string_view>

namespace uavcpn {

// One directional air-ground link.
struct ChannelParams {
  double tx_power;  // W
  double alpha;     // path-loss exponent
  double eta;       // linear NLoS attenuation in (0, 1]
  double env_b;
  double env_c;
};

struct LinkGeometry {
  double horizontal_distance;  // m
  double altitude;             // m
};

// How the LoS/NLoS mixture is collapsed into one deterministic latency.
enum class ChannelAveraging {
  kPower,  // weight the received power, then take the rate
  kRate,   // weight the two Shannon rates
};

std::string_view to_string(ChannelAveraging mode);
// Accepts "power_avg" and "rate_avg".
ChannelAveraging parse_channel_averaging(std::string_view text);

// Empty string when the invariants hold, otherwise a description.
std::string check_channel_params(const ChannelParams& params);

// Elevation angle in degrees, 90 at zero horizontal distance.
double elevation_deg(const LinkGeometry& geom);

double los_probability(const LinkGeometry& geom, double env_b, double env_c);

// tx_power * (r^2 + h^2)^(-alpha/2), no LoS/NLoS weighting.
double path_gain_power(const ChannelParams& params, const LinkGeometry& geom);

// [P_LoS + eta (1 - P_LoS)] * tx_power * (r^2 + h^2)^(-alpha/2).
double expected_received_power(const ChannelParams& params,
                               const LinkGeometry& geom);

// bandwidth * log2(1 + snr), accurate for tiny snr.
double shannon_rate(double bandwidth, double snr);

// Achievable rate under the chosen averaging mode, bit/s.
double link_rate(const ChannelParams& params, const LinkGeometry& geom,
                 double bandwidth, double noise_power,
                 ChannelAveraging mode = ChannelAveraging::kPower);

// data_size / rate. Returns +inf when the rate underflows to zero and 0 when
// data_size is 0.
double transmission_latency(double data_size, const ChannelParams& params,
                            const LinkGeometry& geom, double bandwidth,
                            double noise_power,
                            ChannelAveraging mode = ChannelAveraging::kPower);

// A link with everything but the geometry bound, for repeated evaluation.
struct LinkModel {
  ChannelParams params;
  double bandwidth;
  double noise_power;
  double data_size;
  ChannelAveraging mode = ChannelAveraging::kPower;

  double latency(double horizontal_distance, double altitude) const {
    return transmission_latency(data_size, params,
                                {horizontal_distance, altitude}, bandwidth,
                                noise_power, mode);
  }
};

}  // namespace uavcpn
