#include "qelidar/channel.hpp"

#include <cmath>

namespace qel {

void validate(const ChannelParams& p) {
  if (!(p.eta > 0.0 && p.eta <= 1.0)) {
    fail(ErrorCode::invalid_eta, "channel: eta must be in (0, 1]");
  }
  if (!std::isfinite(p.delta_t_s) || !std::isfinite(p.delta_omega_s) ||
      !std::isfinite(p.delta_t_i)) {
    fail(ErrorCode::invalid_params, "channel: delays and shift must be finite");
  }
}

void validate(const TargetTruth& t) {
  if (!(t.range >= 0.0) || !(t.light_speed > 0.0) ||
      !(std::abs(t.radial_velocity) < t.light_speed) ||
      !std::isfinite(t.carrier)) {
    fail(ErrorCode::invalid_truth, "target: need r >= 0, |v| < c");
  }
}

ChannelParams truth_to_channel(const TargetTruth& t, double delta_t_i,
                               double eta) {
  validate(t);
  ChannelParams p;
  p.delta_t_s = 2.0 * t.range / t.light_speed;
  p.delta_omega_s = 2.0 * t.carrier * t.radial_velocity / t.light_speed;
  p.delta_t_i = delta_t_i;
  p.eta = eta;
  validate(p);
  return p;
}

void estimates_to_truth(double dt_est, double dw_est, double carrier,
                        double light_speed, double* range_est,
                        double* velocity_est) {
  *range_est = 0.5 * light_speed * dt_est;
  *velocity_est = 0.5 * light_speed * dw_est / carrier;
}

GaussianAmplitude apply_target_channel(const GaussianAmplitude& s,
                                       const CoordLabel& signal,
                                       const ChannelParams& p) {
  validate(p);
  GaussianAmplitude out = time_shift(s, signal, 0.5 * p.delta_t_s);
  out = freq_shift(out, signal, p.delta_omega_s);
  return time_shift(out, signal, 0.5 * p.delta_t_s);
}

GaussianAmplitude apply_idler_storage(const GaussianAmplitude& s,
                                      const CoordLabel& idler,
                                      double delta_t_i) {
  return time_shift(s, idler, delta_t_i);
}

bool survival_trial(double eta, CounterRng& rng) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    fail(ErrorCode::invalid_eta, "survival_trial: eta must be in (0, 1]");
  }
  return rng.bernoulli(eta);
}

bool survival_trial(double eta, uint64_t seed, uint64_t stream) {
  CounterRng rng(seed, stream, kSurvivalLane);
  return survival_trial(eta, rng);
}

uint64_t transmissions_until_k_returns(double eta, int k, CounterRng& rng) {
  if (k < 1) fail(ErrorCode::invalid_params, "need k >= 1");
  uint64_t sent = 0;
  int returned = 0;
  while (returned < k) {
    if (++sent > kEpisodeCap) {
      fail(ErrorCode::episode_overflow, "episode exceeded transmission cap");
    }
    if (survival_trial(eta, rng)) ++returned;
  }
  return sent;
}

uint64_t transmissions_until_k_returns(double eta, int k, uint64_t seed,
                                       uint64_t stream) {
  CounterRng rng(seed, stream, kSurvivalLane);
  return transmissions_until_k_returns(eta, k, rng);
}

}  // namespace qel
