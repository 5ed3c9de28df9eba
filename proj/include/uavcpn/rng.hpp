#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace uavcpn {

// Philox4x32-10 block function (Salmon et al., SC'11). Pure: the same
// (counter, key) pair always yields the same block.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Purpose tags keep the streams of one trial independent of each other.
enum class StreamPurpose : std::uint32_t {
  kComputeNodes = 1,
  kGroundUsers = 2,
  kComputeLatency = 3,
  kGeneric = 15,
};

// Counter-based random stream keyed by (master seed, stream index, purpose).
// Streams with different keys never overlap, so trials can run in any order
// on any thread and still draw identical numbers.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream_index,
               StreamPurpose purpose = StreamPurpose::kGeneric);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1]; safe as the argument of log.
  double uniform_positive();
  // Exponential with the given mean.
  double exponential(double mean);
  // Poisson with the given mean. Exact for any finite mean (large means are
  // split into independent chunks).
  std::uint64_t poisson(double mean);

 private:
  void refill();

  PhiloxKey key_;
  PhiloxCounter counter_;
  std::array<std::uint32_t, 4> block_{};
  int cursor_ = 4;
};

}  // namespace uavcpn
