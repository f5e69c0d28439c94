#include "qelidar/rng.hpp"

#include <cmath>
#include <numbers>

#include "qelidar/errors.hpp"

namespace qel {

namespace {

constexpr uint32_t kWeylA = 0x9E3779B9u;
constexpr uint32_t kWeylB = 0xBB67AE85u;
constexpr uint32_t kMulA = 0xD2511F53u;
constexpr uint32_t kMulB = 0xCD9E8D57u;

inline void mul_hi_lo(uint32_t a, uint32_t b, uint32_t* lo, uint32_t* hi) {
  const uint64_t p = static_cast<uint64_t>(a) * b;
  *lo = static_cast<uint32_t>(p);
  *hi = static_cast<uint32_t>(p >> 32);
}

inline void round_once(std::array<uint32_t, 4>& ctr, const std::array<uint32_t, 2>& key) {
  uint32_t lo0, hi0, lo1, hi1;
  mul_hi_lo(kMulA, ctr[0], &lo0, &hi0);
  mul_hi_lo(kMulB, ctr[2], &lo1, &hi1);
  const std::array<uint32_t, 4> out = {
      hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  ctr = out;
}

}  // namespace

std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    round_once(counter, key);
    if (round < 9) {
      key[0] += kWeylA;
      key[1] += kWeylB;
    }
  }
  return counter;
}

CounterRng::CounterRng(uint64_t seed, uint64_t stream, uint32_t lane)
    : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
      stream_(stream),
      lane_(lane) {}

void CounterRng::refill() {
  // counter words: draw index (64 bits), stream (64 bits); the lane is mixed
  // into the high stream word, which keeps lanes of one stream disjoint.
  const std::array<uint32_t, 4> ctr = {
      static_cast<uint32_t>(index_), static_cast<uint32_t>(index_ >> 32),
      static_cast<uint32_t>(stream_),
      static_cast<uint32_t>(stream_ >> 32) ^ (lane_ << 24)};
  block_ = philox4x32(ctr, key_);
  ++index_;
  avail_ = 2;
}

double CounterRng::uniform() {
  if (avail_ == 0) refill();
  const int slot = 2 - avail_;
  --avail_;
  const uint64_t x =
      (static_cast<uint64_t>(block_[2 * slot + 1]) << 32) | block_[2 * slot];
  // 53-bit mantissa, shifted to (0, 1]
  return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(angle);
  has_cached_normal_ = true;
  return r * std::cos(angle);
}

bool CounterRng::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorCode::invalid_params, "bernoulli: p outside [0, 1]");
  }
  return uniform() <= p;
}

}  // namespace qel
