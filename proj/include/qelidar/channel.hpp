#pragma once

// Lidar-to-target-to-lidar channel: delay / Doppler / delay on the signal,
// lossless storage delay on the idler, and Bernoulli photon survival with
// roundtrip transmissivity eta. Loss is photon-level erasure, never amplitude
// damping: every protocol conditions on a detected photon whose conditional
// state stays pure.

#include <cstdint>

#include "qelidar/gaussian_state.hpp"

namespace qel {

struct ChannelParams {
  double delta_t_s = 0.0;     // roundtrip delay (u)
  double delta_omega_s = 0.0; // Doppler shift (rad/u)
  double delta_t_i = 0.0;     // idler storage delay (u)
  double eta = 1.0;           // roundtrip transmissivity, in (0, 1]
};

struct TargetTruth {
  double range = 0.0;           // r
  double radial_velocity = 0.0; // v, positive toward the lidar
  double carrier = 0.0;         // signal center frequency
  double light_speed = 1.0;     // c
};

void validate(const ChannelParams& p);
void validate(const TargetTruth& t);

// delta_t_s = 2 r / c, delta_omega_s = 2 carrier v / c
ChannelParams truth_to_channel(const TargetTruth& t, double delta_t_i,
                               double eta = 1.0);
void estimates_to_truth(double dt_est, double dw_est, double carrier,
                        double light_speed, double* range_est,
                        double* velocity_est);

// delay(dt/2), Doppler(dw), delay(dt/2) on the signal coordinate
GaussianAmplitude apply_target_channel(const GaussianAmplitude& s,
                                       const CoordLabel& signal,
                                       const ChannelParams& p);
GaussianAmplitude apply_idler_storage(const GaussianAmplitude& s,
                                      const CoordLabel& idler,
                                      double delta_t_i);

bool survival_trial(double eta, CounterRng& rng);
bool survival_trial(double eta, uint64_t seed, uint64_t stream);

inline constexpr uint64_t kEpisodeCap = 10'000'000;

// transmissions needed for the k-th returned photon; EpisodeOverflow past
// the cap
uint64_t transmissions_until_k_returns(double eta, int k, CounterRng& rng);
uint64_t transmissions_until_k_returns(double eta, int k, uint64_t seed,
                                       uint64_t stream);

}  // namespace qel
