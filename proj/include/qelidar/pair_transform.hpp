#pragma once

// The signal-idler sum/difference unitary: in the frequency representation a
// pair (w_S, w_I) maps to ((w_S + w_I)/2, w_S - w_I); equivalently, in the
// time representation (t_S, t_I) maps to (t_S + t_I, (t_S - t_I)/2). Both are
// unimodular point transformations, so the transform is exact on Gaussian
// parameters. Applied after the target channel it factorizes the biphoton
// into a signal photon carrying the Doppler shift and an idler photon
// carrying the time delay.

#include "qelidar/biphoton.hpp"
#include "qelidar/channel.hpp"
#include "qelidar/gaussian_state.hpp"

namespace qel {

struct PairSelector {
  CoordLabel signal;
  CoordLabel idler;
};

PairSelector biphoton_pair();

GaussianAmplitude apply_sum_difference(const GaussianAmplitude& s,
                                       const PairSelector& pair);
GaussianAmplitude apply_sum_difference_inverse(const GaussianAmplitude& s,
                                               const PairSelector& pair);

// Same operator built in the time representation (used to cross-check the
// frequency-representation construction).
GaussianAmplitude apply_sum_difference_time_route(const GaussianAmplitude& s,
                                                  const PairSelector& pair);

// End-to-end single-pair map, two equivalent constructions:
//  - entangle route: inverse transform, target channel + idler storage,
//    forward transform;
//  - product route: the factorized displacements
//      signal: freq shift dw/2 then time shift (dt_s + dt_i)
//      idler:  freq shift dw   then time shift (dt_s - dt_i)/2.
// They agree up to a constant global phase.
GaussianAmplitude apply_u_entangled_route(const GaussianAmplitude& s,
                                          const PairSelector& pair,
                                          const ChannelParams& ch);
GaussianAmplitude apply_u_product_route(const GaussianAmplitude& s,
                                        const PairSelector& pair,
                                        const ChannelParams& ch);

struct Estimates {
  double delta_t = 0.0;
  double delta_omega = 0.0;
};

// dt_est = 2 t_out + delta_t_i,  dw_est = 2 w_out - omega_p
Estimates estimate_from_outcomes(double omega_s_out, double t_i_out,
                                 double delta_t_i, double omega_p);

struct EstimatorStds {
  double dt = 0.0;
  double dw = 0.0;
};

// Exact distribution-level standard deviations of the two estimates:
// sigma_cor and 1/(2 sigma_coh).
EstimatorStds exact_estimator_stds(const BiphotonParams& p);
// Large time-bandwidth limits 1/(2W) and 1/(2T); approached as
// sigma_cor / sigma_coh -> 0.
EstimatorStds asymptotic_estimator_stds(const BiphotonParams& p);

}  // namespace qel
