#include "qelidar/montecarlo.hpp"

#include <cmath>

#include "qelidar/parallel.hpp"
#include "qelidar/stats.hpp"

namespace qel {

namespace {

// Precomputed post-transform measurement density (signal frequency, idler
// time); per-trial work is then two Gaussian draws.
class TrialSampler {
 public:
  TrialSampler(const BiphotonParams& p, const ChannelParams& ch)
      : delta_t_i_(ch.delta_t_i), omega_p_(p.omega_p) {
    GaussianAmplitude s = receiver_state(p, ch);
    s = apply_sum_difference(s, biphoton_pair());
    s = to_rep(s, idler_time_label(), Rep::time);
    signal_index_ = s.index_of(signal_time_label());
    idler_index_ = s.index_of(idler_time_label());
    density_ = measurement_density(s);
    root_ = symmetric_sqrt(density_.covariance);
  }

  TrialRecord run(uint64_t seed, uint64_t stream) const {
    CounterRng rng(seed, stream, kMeasurementLane);
    const Vec x = sample(density_, root_, rng);
    TrialRecord r;
    r.seed = seed;
    r.stream = stream;
    r.omega_s_out = x(signal_index_);
    r.t_i_out = x(idler_index_);
    const Estimates est =
        estimate_from_outcomes(r.omega_s_out, r.t_i_out, delta_t_i_, omega_p_);
    r.dt_est = est.delta_t;
    r.dw_est = est.delta_omega;
    return r;
  }

 private:
  double delta_t_i_;
  double omega_p_;
  int signal_index_ = 0;
  int idler_index_ = 0;
  MeasurementDensity density_;
  Mat root_;
};

CampaignResult summarize_campaign(const ChannelParams& ch,
                                  std::vector<TrialRecord> records) {
  CampaignResult out;
  out.n = records.size();
  out.truth_dt = ch.delta_t_s;
  out.truth_dw = ch.delta_omega_s;

  std::vector<double> err_dt(records.size()), err_dw(records.size()),
      trans(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    err_dt[i] = records[i].dt_est - ch.delta_t_s;
    err_dw[i] = records[i].dw_est - ch.delta_omega_s;
    trans[i] = static_cast<double>(records[i].transmissions_used);
  }

  const SampleStats bias_t = summarize(err_dt);
  const SampleStats bias_w = summarize(err_dw);
  out.bias_dt = bias_t.mean;
  out.bias_dw = bias_w.mean;
  out.se_bias_dt = bias_t.se_mean;
  out.se_bias_dw = bias_w.se_mean;

  const RmsStats rms_t = rms_stats(err_dt);
  const RmsStats rms_w = rms_stats(err_dw);
  out.rms_dt = rms_t.rms;
  out.rms_dw = rms_w.rms;
  out.se_rms_dt = rms_t.se;
  out.se_rms_dw = rms_w.se;
  out.rms_dt_ci[0] = rms_t.ci_lo;
  out.rms_dt_ci[1] = rms_t.ci_hi;
  out.rms_dw_ci[0] = rms_w.ci_lo;
  out.rms_dw_ci[1] = rms_w.ci_hi;

  out.product = out.rms_dt * out.rms_dw;
  const double n = static_cast<double>(out.n);
  out.se_product = out.product * std::sqrt(1.0 / n);
  out.product_ci[0] = out.product - 4.0 * out.se_product;
  out.product_ci[1] = out.product + 4.0 * out.se_product;

  const SampleStats ts = summarize(trans);
  out.transmissions_mean = ts.mean;
  out.transmissions_std = ts.std_dev;
  out.se_transmissions_mean = ts.se_mean;
  out.transmissions_total = 0;
  for (const TrialRecord& r : records) {
    out.transmissions_total += r.transmissions_used;
  }

  out.records = std::move(records);
  return out;
}

void attach_bounds(CampaignResult* out, const BiphotonParams& p) {
  CostMatrix unit{Mat::Identity(2, 2)};
  const CRReport rep = make_cr_report(unit, p);
  out->bounds.dt_min = rep.dt_min;
  out->bounds.dw_min = rep.dw_min;
  out->bounds.arthurs_kelly = 1.0;
  out->bounds.eq_product = rep.product_bound;
  const EstimatorStds stds = exact_estimator_stds(p);
  out->exact_std_dt = stds.dt;
  out->exact_std_dw = stds.dw;
}

}  // namespace

TrialRecord run_single_photon_trial(const BiphotonParams& p,
                                    const ChannelParams& ch, uint64_t seed,
                                    uint64_t stream) {
  return TrialSampler(p, ch).run(seed, stream);
}

CampaignResult run_campaign(const BiphotonParams& p, const ChannelParams& ch,
                            uint64_t n_trials, uint64_t seed, int threads) {
  if (n_trials < 1) fail(ErrorCode::invalid_params, "campaign: need trials");
  const TrialSampler sampler(p, ch);
  std::vector<TrialRecord> records(n_trials);
  parallel_for(n_trials, threads, [&](uint64_t i) {
    records[i] = sampler.run(seed, i);
  });
  CampaignResult out = summarize_campaign(ch, std::move(records));
  attach_bounds(&out, p);
  return out;
}

CampaignResult run_lossy_campaign(const BiphotonParams& p,
                                  const ChannelParams& ch,
                                  uint64_t n_episodes, uint64_t seed,
                                  int threads) {
  if (n_episodes < 1) fail(ErrorCode::invalid_params, "campaign: need episodes");
  validate(ch);
  const TrialSampler sampler(p, ch);
  std::vector<TrialRecord> records(n_episodes);
  parallel_for(n_episodes, threads, [&](uint64_t i) {
    CounterRng survival(seed, i, kSurvivalLane);
    const uint64_t sent = transmissions_until_k_returns(ch.eta, 1, survival);
    records[i] = sampler.run(seed, i);
    records[i].transmissions_used = sent;
  });
  CampaignResult out = summarize_campaign(ch, std::move(records));
  attach_bounds(&out, p);
  return out;
}

CampaignResult run_unentangled_baseline(uint64_t n_episodes, double eta,
                                        const BaselineParams& bp,
                                        const ChannelParams& truth,
                                        uint64_t seed, int threads) {
  if (!(bp.t0_time > 0.0) || !(bp.t0_freq > 0.0)) {
    fail(ErrorCode::invalid_params, "baseline: pulse widths must be positive");
  }
  if (n_episodes < 1) fail(ErrorCode::invalid_params, "baseline: need episodes");
  ChannelParams ch = truth;
  ch.eta = eta;
  validate(ch);

  // single-photon states for the two commitments (TW = 1/2 each)
  auto make_pulse = [&](double t0) {
    CMat A(1, 1);
    A << Cplx(0.5 / (t0 * t0), 0.0);
    CVec b = CVec::Zero(1);
    GaussianAmplitude s =
        make_state(A, b, {CoordLabel{0, Role::signal, Rep::time}});
    s = time_shift(s, signal_time_label(), ch.delta_t_s);
    return freq_shift(s, signal_time_label(), ch.delta_omega_s);
  };
  const GaussianAmplitude time_pulse = make_pulse(bp.t0_time);
  const GaussianAmplitude freq_pulse =
      to_rep(make_pulse(bp.t0_freq), signal_time_label(), Rep::frequency);

  const MeasurementDensity time_density = measurement_density(time_pulse);
  const MeasurementDensity freq_density = measurement_density(freq_pulse);
  const Mat time_root = symmetric_sqrt(time_density.covariance);
  const Mat freq_root = symmetric_sqrt(freq_density.covariance);

  std::vector<TrialRecord> records(n_episodes);
  parallel_for(n_episodes, threads, [&](uint64_t i) {
    CounterRng survival(seed, i, kSurvivalLane);
    CounterRng outcomes(seed, i, kMeasurementLane);
    const uint64_t wait_time = transmissions_until_k_returns(eta, 1, survival);
    const uint64_t wait_freq = transmissions_until_k_returns(eta, 1, survival);
    TrialRecord r;
    r.seed = seed;
    r.stream = i;
    r.transmissions_used = wait_time + wait_freq;
    r.t_i_out = sample(time_density, time_root, outcomes)(0);
    r.omega_s_out = sample(freq_density, freq_root, outcomes)(0);
    r.dt_est = r.t_i_out;       // emission time is known
    r.dw_est = r.omega_s_out;   // baseband carrier
    records[i] = r;
  });

  CampaignResult out = summarize_campaign(ch, std::move(records));
  out.exact_std_dt = bp.t0_time;
  out.exact_std_dw = 0.5 / bp.t0_freq;
  out.bounds.arthurs_kelly = 1.0;
  return out;
}

}  // namespace qel
