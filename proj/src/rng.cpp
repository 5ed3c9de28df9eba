#include "uavcpn/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace uavcpn {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

// exp(-mean) must stay well above the smallest normal double.
constexpr double kPoissonChunk = 500.0;

std::uint64_t poisson_by_inversion(RandomStream& rng, double mean) {
  const double u = rng.uniform();
  double p = std::exp(-mean);
  double cumulative = p;
  std::uint64_t k = 0;
  while (u >= cumulative) {
    ++k;
    p *= mean / static_cast<double>(k);
    const double next = cumulative + p;
    if (next == cumulative) break;  // tail below double resolution
    cumulative = next;
  }
  return k;
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_index,
                           StreamPurpose purpose)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      counter_{0u, static_cast<std::uint32_t>(purpose),
               static_cast<std::uint32_t>(stream_index),
               static_cast<std::uint32_t>(stream_index >> 32)} {}

void RandomStream::refill() {
  block_ = philox4x32_10(counter_, key_);
  if (++counter_[0] == 0) {
    throw std::overflow_error("RandomStream: block counter exhausted");
  }
  cursor_ = 0;
}

RandomStream::result_type RandomStream::operator()() {
  if (cursor_ >= 3) refill();
  const std::uint64_t lo = block_[cursor_];
  const std::uint64_t hi = block_[cursor_ + 1];
  cursor_ += 2;
  return (hi << 32) | lo;
}

double RandomStream::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_positive() {
  return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53;
}

double RandomStream::exponential(double mean) {
  return -mean * std::log(uniform_positive());
}

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson: mean must be finite and >= 0");
  }
  std::uint64_t total = 0;
  while (mean > kPoissonChunk) {
    total += poisson_by_inversion(*this, kPoissonChunk);
    mean -= kPoissonChunk;
  }
  if (mean > 0.0) total += poisson_by_inversion(*this, mean);
  return total;
}

}  // namespace uavcpn
