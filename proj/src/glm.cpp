#include "qelidar/glm.hpp"

#include <algorithm>
#include <cmath>

#include "qelidar/parallel.hpp"
#include "qelidar/stats.hpp"

namespace qel {

void validate(const GlmParams& g) {
  if (g.m < 1 || g.m > 32) {
    fail(ErrorCode::invalid_params, "glm: photon count must be in [1, 32]");
  }
  if (!(g.width > 0.0) || !std::isfinite(g.width)) {
    fail(ErrorCode::invalid_params, "glm: width must be positive");
  }
  if (!(g.epsilon > 0.0) || !std::isfinite(g.epsilon)) {
    fail(ErrorCode::invalid_params, "glm: epsilon must be positive");
  }
  if (!std::isfinite(g.carrier)) {
    fail(ErrorCode::invalid_params, "glm: carrier must be finite");
  }
}

bool epsilon_warning(const GlmParams& g) { return g.epsilon > g.width / 10.0; }

GaussianAmplitude build_glm(const GlmParams& g, Role role,
                            int first_photon_id) {
  validate(g);
  const int m = g.m;
  const double alpha = 1.0 / (2.0 * m * g.width * g.width);
  const double beta = 1.0 / (2.0 * g.epsilon * g.epsilon);
  // A = alpha P_c + beta (I - P_c) with P_c the uniform projector
  Mat a = Mat::Constant(m, m, (alpha - beta) / m);
  a.diagonal().array() += beta;
  const CMat A = a.cast<Cplx>();
  const Vec mean = Vec::Constant(m, g.carrier);
  const CVec b = (a * mean).cast<Cplx>();
  std::vector<CoordLabel> labels(m);
  for (int i = 0; i < m; ++i) {
    labels[i] = CoordLabel{first_photon_id + i, role, g.rep};
  }
  return make_state(A, b, std::move(labels));
}

namespace {

// mean of a coordinate subset pushed through the density: returns the
// standard deviation of (1/k) sum_{i in subset} x_i
double mean_coordinate_std(const MeasurementDensity& d,
                           const std::vector<int>& subset) {
  double acc = 0.0;
  for (int i : subset) {
    for (int j : subset) acc += d.covariance(i, j);
  }
  const double k = static_cast<double>(subset.size());
  return std::sqrt(acc) / k;
}

CampaignResult collect_campaign(const MeasurementDensity& density,
                                const Mat& root,
                                const std::vector<int>& freq_subset,
                                const std::vector<int>& time_subset,
                                double truth_dt, double truth_dw,
                                double dt_scale, double dt_offset,
                                double dw_scale, uint64_t transmissions,
                                uint64_t n_trials, uint64_t seed,
                                int threads) {
  std::vector<TrialRecord> records(n_trials);
  parallel_for(n_trials, threads, [&](uint64_t i) {
    CounterRng rng(seed, i, kMeasurementLane);
    const Vec x = sample(density, root, rng);
    TrialRecord r;
    r.seed = seed;
    r.stream = i;
    double wbar = 0.0;
    for (int idx : freq_subset) wbar += x(idx);
    if (!freq_subset.empty()) wbar /= static_cast<double>(freq_subset.size());
    double tbar = 0.0;
    for (int idx : time_subset) tbar += x(idx);
    if (!time_subset.empty()) tbar /= static_cast<double>(time_subset.size());
    r.omega_s_out = wbar;
    r.t_i_out = tbar;
    r.dt_est = dt_scale * tbar + dt_offset;
    r.dw_est = dw_scale * wbar;
    r.transmissions_used = transmissions;
    records[i] = r;
  });

  CampaignResult out;
  out.n = n_trials;
  out.truth_dt = truth_dt;
  out.truth_dw = truth_dw;
  std::vector<double> err_dt(n_trials), err_dw(n_trials);
  for (uint64_t i = 0; i < n_trials; ++i) {
    err_dt[i] = records[i].dt_est - truth_dt;
    err_dw[i] = records[i].dw_est - truth_dw;
  }
  const SampleStats bt = summarize(err_dt);
  const SampleStats bw = summarize(err_dw);
  out.bias_dt = bt.mean;
  out.bias_dw = bw.mean;
  out.se_bias_dt = bt.se_mean;
  out.se_bias_dw = bw.se_mean;
  const RmsStats rt = rms_stats(err_dt);
  const RmsStats rw = rms_stats(err_dw);
  out.rms_dt = rt.rms;
  out.rms_dw = rw.rms;
  out.se_rms_dt = rt.se;
  out.se_rms_dw = rw.se;
  out.rms_dt_ci[0] = rt.ci_lo;
  out.rms_dt_ci[1] = rt.ci_hi;
  out.rms_dw_ci[0] = rw.ci_lo;
  out.rms_dw_ci[1] = rw.ci_hi;
  out.product = out.rms_dt * out.rms_dw;
  out.se_product = out.product / std::sqrt(static_cast<double>(n_trials));
  out.product_ci[0] = out.product - 4.0 * out.se_product;
  out.product_ci[1] = out.product + 4.0 * out.se_product;
  out.transmissions_mean = static_cast<double>(transmissions);
  out.transmissions_total = n_trials * transmissions;
  out.records = std::move(records);
  return out;
}

}  // namespace

GlmRunResult direct_glm_delay_experiment(const GlmParams& g, double delay,
                                         uint64_t n_trials, uint64_t seed,
                                         int threads) {
  validate(g);
  if (g.rep != Rep::frequency) {
    fail(ErrorCode::invalid_params,
         "direct delay experiment needs a frequency-domain state");
  }
  GaussianAmplitude s = build_glm(g);
  const std::vector<CoordLabel> coords = s.labels();
  for (const CoordLabel& l : coords) s = time_shift(s, l, delay);
  for (const CoordLabel& l : coords) s = to_rep(s, l, Rep::time);

  const MeasurementDensity density = measurement_density(s);
  const Mat root = symmetric_sqrt(density.covariance);
  std::vector<int> all(g.m);
  for (int i = 0; i < g.m; ++i) all[i] = i;

  GlmRunResult out;
  out.analytic_std_dt = mean_coordinate_std(density, all);
  out.campaign = collect_campaign(density, root, {}, all, delay, 0.0,
                                  /*dt_scale=*/1.0, /*dt_offset=*/0.0,
                                  /*dw_scale=*/0.0,
                                  /*transmissions=*/static_cast<uint64_t>(g.m),
                                  n_trials, seed, threads);
  out.campaign.exact_std_dt = out.analytic_std_dt;
  return out;
}

GaussianAmplitude build_hl_input(const GlmParams& signal_time,
                                 const GlmParams& idler_freq) {
  if (signal_time.m != idler_freq.m) {
    fail(ErrorCode::mismatched_m, "signal and idler photon counts differ");
  }
  if (signal_time.rep != Rep::time || idler_freq.rep != Rep::frequency) {
    fail(ErrorCode::invalid_params,
         "expected a time-domain signal state and a frequency-domain idler state");
  }
  const GaussianAmplitude s = build_glm(signal_time, Role::signal, 0);
  const GaussianAmplitude i =
      build_glm(idler_freq, Role::idler, signal_time.m);
  return tensor(s, i);
}

GaussianAmplitude apply_u_m_pipeline(const GaussianAmplitude& s, int m,
                                     const ChannelParams& ch) {
  GaussianAmplitude t = s;
  auto pair_m = [m](int k) {
    return PairSelector{CoordLabel{k, Role::signal, Rep::time},
                        CoordLabel{m + k, Role::idler, Rep::frequency}};
  };
  for (int k = 0; k < m; ++k) t = apply_sum_difference_inverse(t, pair_m(k));
  for (int k = 0; k < m; ++k) {
    t = apply_target_channel(t, pair_m(k).signal, ch);
    t = apply_idler_storage(t, pair_m(k).idler, ch.delta_t_i);
  }
  for (int k = 0; k < m; ++k) t = apply_sum_difference(t, pair_m(k));
  return t;
}

GaussianAmplitude apply_u_m_product(const GaussianAmplitude& s, int m,
                                    const ChannelParams& ch) {
  validate(ch);
  GaussianAmplitude t = s;
  for (int k = 0; k < m; ++k) {
    const CoordLabel sig{k, Role::signal, Rep::time};
    t = freq_shift(t, sig, 0.5 * ch.delta_omega_s);
    t = time_shift(t, sig, ch.delta_t_s + ch.delta_t_i);
  }
  for (int k = 0; k < m; ++k) {
    const CoordLabel idl{m + k, Role::idler, Rep::frequency};
    t = freq_shift(t, idl, ch.delta_omega_s);
    t = time_shift(t, idl, 0.5 * (ch.delta_t_s - ch.delta_t_i));
  }
  return t;
}

GlmRunResult entangled_hl_experiment(const GlmParams& signal_time,
                                     const GlmParams& idler_freq,
                                     const ChannelParams& ch,
                                     uint64_t n_trials, uint64_t seed,
                                     int threads) {
  const int m = signal_time.m;
  GaussianAmplitude t = apply_u_m_pipeline(build_hl_input(signal_time, idler_freq), m, ch);
  // measure signal frequencies and idler times
  for (int k = 0; k < m; ++k) {
    t = to_rep(t, CoordLabel{k, Role::signal, Rep::time}, Rep::frequency);
    t = to_rep(t, CoordLabel{m + k, Role::idler, Rep::frequency}, Rep::time);
  }
  std::vector<int> freq_subset(m), time_subset(m);
  for (int k = 0; k < m; ++k) {
    freq_subset[k] = t.index_of(CoordLabel{k, Role::signal, Rep::frequency});
    time_subset[k] = t.index_of(CoordLabel{m + k, Role::idler, Rep::time});
  }

  const MeasurementDensity density = measurement_density(t);
  const Mat root = symmetric_sqrt(density.covariance);

  GlmRunResult out;
  out.analytic_std_dw = 2.0 * mean_coordinate_std(density, freq_subset);
  out.analytic_std_dt = 2.0 * mean_coordinate_std(density, time_subset);
  out.campaign = collect_campaign(
      density, root, freq_subset, time_subset, ch.delta_t_s, ch.delta_omega_s,
      /*dt_scale=*/2.0, /*dt_offset=*/ch.delta_t_i,
      /*dw_scale=*/2.0, /*transmissions=*/static_cast<uint64_t>(m), n_trials,
      seed, threads);
  out.campaign.exact_std_dt = out.analytic_std_dt;
  out.campaign.exact_std_dw = out.analytic_std_dw;
  return out;
}

Extrapolation epsilon_extrapolate(std::span<const double> epsilons,
                                  std::span<const double> values) {
  const size_t k = epsilons.size();
  if (k < 3 || values.size() != k) {
    fail(ErrorCode::invalid_params,
         "extrapolation needs >= 3 (epsilon, value) pairs");
  }
  std::vector<size_t> order(k);
  for (size_t i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return epsilons[a] > epsilons[b];
  });
  std::vector<double> h(k), v(k);
  for (size_t i = 0; i < k; ++i) {
    if (!(epsilons[order[i]] > 0.0)) {
      fail(ErrorCode::invalid_params, "extrapolation: epsilons must be > 0");
    }
    h[i] = epsilons[order[i]] * epsilons[order[i]];
    v[i] = values[order[i]];
  }
  const double ratio = h[1] / h[0];
  for (size_t i = 2; i < k; ++i) {
    if (std::abs(h[i] / h[i - 1] - ratio) > 1e-6 * ratio) {
      fail(ErrorCode::invalid_params,
           "extrapolation: epsilons must be geometrically spaced");
    }
  }

  // Neville table in h = epsilon^2, evaluated at h = 0
  std::vector<std::vector<double>> table(k);
  for (size_t i = 0; i < k; ++i) {
    table[i].resize(i + 1);
    table[i][0] = v[i];
    for (size_t j = 1; j <= i; ++j) {
      const double factor = h[i - j] / h[i];
      table[i][j] = table[i][j - 1] +
                    (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
    }
  }

  Extrapolation out;
  out.table_row = table[k - 1];
  out.value = table[k - 1][k - 1];
  // convergence monitor: adding points must not move the diagonal by more
  // than the previous stage did (up to a roundoff floor)
  const double floor_ = std::max(1e-12, 1e-9 * std::abs(out.value));
  double prev = std::abs(table[1][1] - table[0][0]);
  out.residual = std::abs(table[k - 1][k - 1] - table[k - 2][k - 2]);
  for (size_t j = 2; j < k; ++j) {
    const double step = std::abs(table[j][j] - table[j - 1][j - 1]);
    if (step > std::max(prev, floor_)) {
      fail(ErrorCode::non_convergent,
           "extrapolation: diagonal corrections grow between stages");
    }
    prev = std::max(step, floor_);
  }
  return out;
}

}  // namespace qel
