#pragma once

// M-photon Giovannetti-Lloyd-Maccone-style probe states with an explicit
// Gaussian regularization: the collective coordinate (sum x_m)/sqrt(M)
// carries the physical width (each photon's marginal tends to the nominal
// width as epsilon -> 0) while every difference direction gets width
// epsilon so the state is normalizable. Estimators built on the collective
// coordinate are exactly epsilon-independent; the epsilon -> 0 extrapolation
// is still run and reported.

#include <span>

#include "qelidar/montecarlo.hpp"

namespace qel {

struct GlmParams {
  int m = 1;             // photon count
  double width = 1.0;    // collective width: T for time rep, W for frequency rep
  Rep rep = Rep::time;
  double epsilon = 0.01; // difference-coordinate width
  double carrier = 0.0;  // mean offset in the native representation
};

void validate(const GlmParams& g);
// regularization is meant to be small; flag epsilon > width / 10
bool epsilon_warning(const GlmParams& g);

GaussianAmplitude build_glm(const GlmParams& g, Role role = Role::signal,
                            int first_photon_id = 0);

struct GlmRunResult {
  CampaignResult campaign;
  // exact standard deviations of the estimators, propagated through the
  // Gaussian algebra with no sampling
  double analytic_std_dt = 0.0;
  double analytic_std_dw = 0.0;
};

// All photons delayed by `delay`; all arrival times measured; the estimate is
// the mean arrival time. Requires a frequency-domain state.
GlmRunResult direct_glm_delay_experiment(const GlmParams& g, double delay,
                                         uint64_t n_trials, uint64_t seed,
                                         int threads = 1);

// Pairwise-entangled scheme: time-domain signal state and frequency-domain
// idler state, pairwise inverse sum/difference transform, target channel on
// every signal and storage on every idler, forward transform, then signal
// frequencies and idler times are measured. Estimates:
//   dw_est = 2 mean(w_out) - 2 * signal carrier-equivalent (zero here)
//   dt_est = 2 mean(t_out) + delta_t_i
GlmRunResult entangled_hl_experiment(const GlmParams& signal_time,
                                     const GlmParams& idler_freq,
                                     const ChannelParams& ch,
                                     uint64_t n_trials, uint64_t seed,
                                     int threads = 1);

// The two equivalent forms of the M-pair map (used by tests and the scenario
// self-checks): the explicit three-stage pipeline and the factorized
// per-photon displacements.
GaussianAmplitude apply_u_m_pipeline(const GaussianAmplitude& s, int m,
                                     const ChannelParams& ch);
GaussianAmplitude apply_u_m_product(const GaussianAmplitude& s, int m,
                                    const ChannelParams& ch);
// the combined input state the experiment starts from
GaussianAmplitude build_hl_input(const GlmParams& signal_time,
                                 const GlmParams& idler_freq);

struct Extrapolation {
  double value = 0.0;
  double residual = 0.0;
  std::vector<double> table_row;  // Richardson diagonal
};

// Richardson extrapolation in epsilon^2 over >= 3 geometrically spaced
// epsilons; NonConvergent when later corrections grow above the noise floor.
Extrapolation epsilon_extrapolate(std::span<const double> epsilons,
                                  std::span<const double> values);

}  // namespace qel
