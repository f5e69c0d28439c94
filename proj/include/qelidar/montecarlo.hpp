#pragma once

// End-to-end single-photon-lidar trials and campaigns. One trial: biphoton ->
// target channel + idler storage -> sum/difference transform -> measure the
// signal frequency and the idler arrival time -> affine estimates. Campaigns
// aggregate bias / rms / product statistics and compare them against the
// Cramer-Rao machinery. Per-trial counter RNG streams make every campaign
// bit-reproducible for any thread count.

#include <cstdint>
#include <vector>

#include "qelidar/estimation.hpp"
#include "qelidar/pair_transform.hpp"

namespace qel {

struct TrialRecord {
  uint64_t seed = 0;
  uint64_t stream = 0;
  double omega_s_out = 0.0;
  double t_i_out = 0.0;
  double dt_est = 0.0;
  double dw_est = 0.0;
  uint64_t transmissions_used = 1;
};

struct BoundSet {
  double dt_min = 0.0;
  double dw_min = 0.0;
  double arthurs_kelly = 1.0;
  double eq_product = 0.0;  // (1 + 2TW) / (8 T^2 W^2)
};

struct CampaignResult {
  uint64_t n = 0;
  double truth_dt = 0.0, truth_dw = 0.0;
  double bias_dt = 0.0, bias_dw = 0.0;
  double se_bias_dt = 0.0, se_bias_dw = 0.0;
  double rms_dt = 0.0, rms_dw = 0.0;
  double se_rms_dt = 0.0, se_rms_dw = 0.0;
  double rms_dt_ci[2] = {0.0, 0.0};
  double rms_dw_ci[2] = {0.0, 0.0};
  double product = 0.0;       // rms_dt * rms_dw
  double se_product = 0.0;    // delta-method
  double product_ci[2] = {0.0, 0.0};
  double exact_std_dt = 0.0;  // distribution-level targets
  double exact_std_dw = 0.0;
  BoundSet bounds;
  double transmissions_mean = 0.0;
  double transmissions_std = 0.0;
  double se_transmissions_mean = 0.0;
  uint64_t transmissions_total = 0;
  std::vector<TrialRecord> records;
};

TrialRecord run_single_photon_trial(const BiphotonParams& p,
                                    const ChannelParams& ch, uint64_t seed,
                                    uint64_t stream);

CampaignResult run_campaign(const BiphotonParams& p, const ChannelParams& ch,
                            uint64_t n_trials, uint64_t seed, int threads = 1);

// Each episode transmits photons one at a time until the first return;
// estimation then conditions on that photon. At eta = 1 this reproduces
// run_campaign record for record.
CampaignResult run_lossy_campaign(const BiphotonParams& p,
                                  const ChannelParams& ch,
                                  uint64_t n_episodes, uint64_t seed,
                                  int threads = 1);

// Unentangled comparison: minimum-uncertainty single photons, each committed
// before transmission to a time or a frequency measurement. The commitment
// switches after each successful return, starting with time, so an episode
// is two geometric waits back to back.
struct BaselineParams {
  double t0_time = 1.0;  // rms duration of the timing pulses
  double t0_freq = 1.0;  // rms duration of the frequency pulses
};

CampaignResult run_unentangled_baseline(uint64_t n_episodes, double eta,
                                        const BaselineParams& bp,
                                        const ChannelParams& truth,
                                        uint64_t seed, int threads = 1);

}  // namespace qel
