#pragma once

// Decibel and unit conversions used when reading scenario files.

namespace uavcpn {

// 10^(x/10). Throws std::invalid_argument for non-finite input.
double db_to_linear(double db);

// 10*log10(x). Throws std::invalid_argument unless x is finite and > 0.
double linear_to_db(double ratio);

// dBW and dBm to watts.
double dbw_to_watts(double dbw);
double dbm_to_watts(double dbm);

inline constexpr double kBitsPerMegabyte = 8.0e6;  // SI megabyte
inline constexpr double kHertzPerMegahertz = 1.0e6;
inline constexpr double kSecondsPerMillisecond = 1.0e-3;
inline constexpr double kSquareMetersPerSquareKm = 1.0e6;

}  // namespace uavcpn
