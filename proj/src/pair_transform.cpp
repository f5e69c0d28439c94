#include "qelidar/pair_transform.hpp"

namespace qel {

namespace {

void validate_pair(const GaussianAmplitude& s, const PairSelector& pair,
                   int* is, int* ii) {
  if (pair.signal.role != Role::signal || pair.idler.role != Role::idler ||
      pair.signal.photon_id == pair.idler.photon_id) {
    fail(ErrorCode::invalid_params,
         "pair selector: need distinct signal and idler coordinates");
  }
  *is = s.index_of(pair.signal);
  *ii = s.index_of(pair.idler);
}

GaussianAmplitude apply_pair_map(const GaussianAmplitude& s,
                                 const PairSelector& pair, Rep rep, double mss,
                                 double msi, double mis, double mii) {
  int is = 0, ii = 0;
  validate_pair(s, pair, &is, &ii);
  GaussianAmplitude t = to_rep(s, pair.signal, rep);
  t = to_rep(t, pair.idler, rep);
  Mat L = Mat::Identity(t.size(), t.size());
  L(is, is) = mss;
  L(is, ii) = msi;
  L(ii, is) = mis;
  L(ii, ii) = mii;
  return linear_map(t, L);
}

}  // namespace

PairSelector biphoton_pair() {
  return {signal_time_label(), idler_time_label()};
}

GaussianAmplitude apply_sum_difference(const GaussianAmplitude& s,
                                       const PairSelector& pair) {
  // (w_S, w_I) -> ((w_S + w_I)/2, w_S - w_I)
  return apply_pair_map(s, pair, Rep::frequency, 0.5, 0.5, 1.0, -1.0);
}

GaussianAmplitude apply_sum_difference_inverse(const GaussianAmplitude& s,
                                               const PairSelector& pair) {
  // (u, w) -> (u + w/2, u - w/2)
  return apply_pair_map(s, pair, Rep::frequency, 1.0, 0.5, 1.0, -0.5);
}

GaussianAmplitude apply_sum_difference_time_route(const GaussianAmplitude& s,
                                                  const PairSelector& pair) {
  // (t_S, t_I) -> (t_S + t_I, (t_S - t_I)/2)
  return apply_pair_map(s, pair, Rep::time, 1.0, 1.0, 0.5, -0.5);
}

GaussianAmplitude apply_u_entangled_route(const GaussianAmplitude& s,
                                          const PairSelector& pair,
                                          const ChannelParams& ch) {
  GaussianAmplitude t = apply_sum_difference_inverse(s, pair);
  t = apply_target_channel(t, pair.signal, ch);
  t = apply_idler_storage(t, pair.idler, ch.delta_t_i);
  return apply_sum_difference(t, pair);
}

GaussianAmplitude apply_u_product_route(const GaussianAmplitude& s,
                                        const PairSelector& pair,
                                        const ChannelParams& ch) {
  validate(ch);
  GaussianAmplitude t = freq_shift(s, pair.signal, 0.5 * ch.delta_omega_s);
  t = time_shift(t, pair.signal, ch.delta_t_s + ch.delta_t_i);
  t = freq_shift(t, pair.idler, ch.delta_omega_s);
  return time_shift(t, pair.idler, 0.5 * (ch.delta_t_s - ch.delta_t_i));
}

Estimates estimate_from_outcomes(double omega_s_out, double t_i_out,
                                 double delta_t_i, double omega_p) {
  return {2.0 * t_i_out + delta_t_i, 2.0 * omega_s_out - omega_p};
}

EstimatorStds exact_estimator_stds(const BiphotonParams& p) {
  validate(p);
  return {p.sigma_cor, 0.5 / p.sigma_coh};
}

EstimatorStds asymptotic_estimator_stds(const BiphotonParams& p) {
  return {0.5 / rms_W(p), 0.5 / rms_T(p)};
}

}  // namespace qel
