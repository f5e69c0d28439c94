#pragma once

// Counter-based random numbers (Philox4x32-10). Every draw is a pure function
// of (seed, stream, lane, draw index), so campaigns are reproducible for any
// execution order and any worker count. Streams index Monte Carlo trials;
// lanes separate independent purposes inside one trial (measurement outcomes
// vs photon-survival draws).

#include <array>
#include <cstdint>

namespace qel {

inline constexpr uint32_t kMeasurementLane = 0;
inline constexpr uint32_t kSurvivalLane = 1;

std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream, uint32_t lane = kMeasurementLane);

  // uniform on (0, 1]
  double uniform();
  // standard normal (Box-Muller; pairs are cached)
  double normal();
  bool bernoulli(double p);

 private:
  void refill();

  std::array<uint32_t, 2> key_;
  uint64_t stream_;
  uint32_t lane_;
  uint64_t index_ = 0;
  std::array<uint32_t, 4> block_{};
  int avail_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace qel
