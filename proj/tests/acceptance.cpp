// Acceptance suite: every release-gating claim of the simulator, one line of
// output per criterion. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qelidar/glm.hpp"
#include "qelidar/scenario.hpp"
#include "qelidar/sdc.hpp"
#include "qelidar/stats.hpp"

using namespace qel;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "    [ok]   " : "    [FAIL] ") + what);
  }
  void note(const std::string& what) {
    details.push_back("    [info] " + what);
  }
};

std::string fmt(double x) { return format_double(x); }

BiphotonParams random_biphoton(std::mt19937& gen) {
  std::uniform_real_distribution<double> coh(0.1, 10.0), cor(0.05, 4.0),
      carrier(-5.0, 5.0);
  return {coh(gen), cor(gen), carrier(gen), carrier(gen)};
}

ChannelParams random_channel(std::mt19937& gen) {
  std::uniform_real_distribution<double> d(-8.0, 8.0), w(-2.0, 2.0);
  return {d(gen), w(gen), d(gen), 1.0};
}

GaussianAmplitude random_pair_state(std::mt19937& gen, Rep rep) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat m(2, 2), im(2, 2);
  m << n(gen), n(gen), n(gen), n(gen);
  const Mat re = m.transpose() * m + 0.4 * Mat::Identity(2, 2);
  im << n(gen), 0.5 * n(gen), 0.0, n(gen);
  im(1, 0) = im(0, 1);
  CMat a(2, 2);
  a.real() = re;
  a.imag() = 0.5 * (im + im.transpose());
  CVec b(2);
  b << Cplx(n(gen), n(gen)), Cplx(n(gen), n(gen));
  return make_state(a, b,
                    {CoordLabel{0, Role::signal, rep},
                     CoordLabel{1, Role::idler, rep}});
}

Criterion structural_exactness() {
  Criterion c{1, "structural-exactness"};
  std::mt19937 gen(1001);
  const PairSelector pair{CoordLabel{0, Role::signal, Rep::frequency},
                          CoordLabel{1, Role::idler, Rep::frequency}};

  double worst_round = 0.0, worst_fourier = 0.0, worst_receiver = 0.0,
         worst_route = 0.0;
  for (int i = 0; i < 120; ++i) {
    // sum/difference round trip
    const GaussianAmplitude s = random_pair_state(gen, Rep::frequency);
    worst_round = std::max(
        worst_round,
        max_param_difference(
            apply_sum_difference_inverse(apply_sum_difference(s, pair), pair),
            s));

    // Fourier round trip
    GaussianAmplitude f = fourier(s, s.labels()[0]);
    f = fourier(f, s.labels()[0]);
    worst_fourier = std::max(worst_fourier, max_param_difference(f, s));

    // channel pipeline against the directly shifted-and-phased state
    const BiphotonParams p = random_biphoton(gen);
    const ChannelParams ch = random_channel(gen);
    GaussianAmplitude via = build_biphoton(p);
    const CMat A = via.quadratic();
    const CVec b0 = via.linear();
    const Cplx c0 = via.log_norm();
    via = apply_target_channel(via, signal_time_label(), ch);
    via = apply_idler_storage(via, idler_time_label(), ch.delta_t_i);
    Vec d(2);
    d << ch.delta_t_s, ch.delta_t_i;
    CVec b_direct = b0 + A * d.cast<Cplx>();
    b_direct(0) += Cplx(0.0, -ch.delta_omega_s);
    const Cplx c_direct =
        c0 - 0.5 * (d.cast<Cplx>().transpose() * A * d.cast<Cplx>())(0) -
        (b0.transpose() * d.cast<Cplx>())(0) +
        Cplx(0.0, 0.5 * ch.delta_omega_s * ch.delta_t_s);
    const GaussianAmplitude direct =
        renormalized(A, b_direct, c_direct, via.labels());
    worst_receiver = std::max(worst_receiver, max_param_difference(via, direct));
    worst_receiver =
        std::max(worst_receiver,
                 std::abs(std::exp(via.log_norm() - direct.log_norm()) - 1.0));

    // factorized route against the entangle-channel-disentangle route
    const GaussianAmplitude input = random_pair_state(gen, Rep::frequency);
    GaussianAmplitude a_route = apply_u_entangled_route(input, pair, ch);
    GaussianAmplitude b_route = apply_u_product_route(input, pair, ch);
    worst_route =
        std::max(worst_route, max_param_difference(a_route, b_route));
  }
  c.require(worst_round < 1e-9,
            "sum/difference round trip on 120 states, worst " +
                fmt(worst_round));
  c.require(worst_fourier < 1e-9,
            "fourier round trip on 120 states, worst " + fmt(worst_fourier));
  c.require(worst_receiver < 1e-9,
            "channel matches the shifted-and-phased receiver state, worst " +
                fmt(worst_receiver));
  c.require(worst_route < 1e-9,
            "factorized route matches the entangled route, worst " +
                fmt(worst_route));
  return c;
}

Criterion factorization() {
  Criterion c{2, "exact-factorization"};
  std::mt19937 gen(1002);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const BiphotonParams p = random_biphoton(gen);
    const ChannelParams ch = random_channel(gen);
    GaussianAmplitude s = build_biphoton(p);
    s = apply_target_channel(s, signal_time_label(), ch);
    s = apply_idler_storage(s, idler_time_label(), ch.delta_t_i);
    s = apply_sum_difference(s, biphoton_pair());
    worst = std::max(worst, cross_coupling(s, {signal_time_label()},
                                           {idler_time_label()}));
  }
  c.require(worst < 1e-12,
            "cross coupling after the transform on 50 draws, worst " +
                fmt(worst));
  return c;
}

Criterion arthurs_kelly_circumvention() {
  Criterion c{3, "arthurs-kelly-circumvention"};
  const BiphotonParams p{10.0, 0.1, 0.0, 0.0};
  const ChannelParams ch{3.0, 0.2, 5.0, 1.0};
  const auto t0 = std::chrono::steady_clock::now();
  const CampaignResult r = run_campaign(p, ch, 100000, 42, 2);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  c.require(std::abs(r.rms_dt / 0.1 - 1.0) <= 0.02,
            "rms(dt) = " + fmt(r.rms_dt) + " within 2% of 0.1");
  c.require(std::abs(r.rms_dw / 0.05 - 1.0) <= 0.02,
            "rms(dw) = " + fmt(r.rms_dw) + " within 2% of 0.05");
  c.require(r.product < 1.0,
            "product " + fmt(r.product) + " beats the simultaneous-measurement "
            "limit 1");
  const double tw = rms_T(p) * rms_W(p);
  c.note("product/limit ratio " + fmt(r.product) + ", predicted 1/(4TW) = " +
         fmt(1.0 / (4.0 * tw)));
  c.require(r.product >= r.bounds.eq_product - 3.0 * r.se_product,
            "product " + fmt(r.product) + " not below the joint bound " +
                fmt(r.bounds.eq_product) + " minus 3 SE (" +
                fmt(3.0 * r.se_product) + ")");
  c.note("joint bound minus product = " +
         fmt((r.bounds.eq_product - r.product) / r.se_product) + " SE");
  c.note("the receiver's exact product sigma_cor/(2 sigma_coh) = " +
         fmt(0.1 * 0.05) + " sits a relative 1/(2TW) below the joint bound " +
         "(1 + 2TW)/(8 T^2 W^2); at 1e5 trials the 3 SE margin resolves that "
         "gap, so this check sits on the failing side of the boundary for "
         "about half of all seeds; it is kept at its stated tolerance");
  c.require(seconds < 10.0,
            "campaign of 1e5 trials took " + fmt(seconds) + " s (< 10 s)");
  return c;
}

Criterion bound_machinery() {
  Criterion c{4, "bound-machinery"};
  const BiphotonParams cw{10.0, 0.1};
  const ChannelParams probe{3.0, 0.2, 5.0, 1.0};
  const Mat ja = qfi_analytic(cw);
  const Mat jn = qfi_numeric(cw, probe);
  const double rel = (jn - ja).cwiseAbs().maxCoeff() / ja.cwiseAbs().maxCoeff();
  c.require(rel <= 1e-4, "information matrix oracle within 1e-4, got " +
                             fmt(rel));
  const double comm = commutator_term_numeric(cw, probe);
  c.require(std::abs(comm - 4.0) <= 4e-4,
            "commutator term " + fmt(comm) + " within 4e-4 of 4");
  const double closed = product_bound(cw);
  const double scanned = product_bound_numeric(cw);
  c.require(std::abs(scanned / closed - 1.0) <= 1e-6,
            "scan bound " + fmt(scanned) + " matches closed form " +
                fmt(closed) + " to 1e-6");
  const double unentangled = product_bound({1.0, 2.0});
  c.require(unentangled == 1.0, "product bound at TW = 1/2 is exactly " +
                                    fmt(unentangled));
  return c;
}

Criterion loss_robustness() {
  Criterion c{5, "loss-robustness"};
  const BiphotonParams p{10.0, 0.1, 0.0, 0.0};
  ChannelParams ch{3.0, 0.2, 5.0, 0.01};
  const CampaignResult lossy = run_lossy_campaign(p, ch, 10000, 42, 2);
  c.require(std::abs(lossy.transmissions_mean - 100.0) <=
                4.0 * lossy.se_transmissions_mean,
            "mean transmissions to first return " +
                fmt(lossy.transmissions_mean) + " within 4 SE of 100");

  const CampaignResult lossless = run_campaign(p, ch, 10000, 43, 2);
  const double joint_dt = std::sqrt(lossy.se_rms_dt * lossy.se_rms_dt +
                                    lossless.se_rms_dt * lossless.se_rms_dt);
  const double joint_dw = std::sqrt(lossy.se_rms_dw * lossy.se_rms_dw +
                                    lossless.se_rms_dw * lossless.se_rms_dw);
  c.require(std::abs(lossy.rms_dt - lossless.rms_dt) <= 3.0 * joint_dt,
            "conditional rms(dt) " + fmt(lossy.rms_dt) +
                " indistinguishable from lossless " + fmt(lossless.rms_dt));
  c.require(std::abs(lossy.rms_dw - lossless.rms_dw) <= 3.0 * joint_dw,
            "conditional rms(dw) " + fmt(lossy.rms_dw) +
                " indistinguishable from lossless " + fmt(lossless.rms_dw));

  const BaselineParams bp{0.1, 10.0};
  const CampaignResult base =
      run_unentangled_baseline(10000, 0.01, bp, ch, 44, 2);
  c.require(std::abs(base.transmissions_mean - 200.0) <=
                4.0 * base.se_transmissions_mean,
            "baseline mean transmissions " + fmt(base.transmissions_mean) +
                " within 4 SE of 200");
  c.note("photon budget ratio baseline/entangled = " +
         fmt(base.transmissions_mean / lossy.transmissions_mean));
  return c;
}

Criterion heisenberg_scaling() {
  Criterion c{6, "heisenberg-scaling"};
  const ChannelParams ch{3.0, 0.2, 5.0, 1.0};
  const double t_width = 10.0, w_width = 5.0;
  const std::vector<double> fracs = {0.04, 0.02, 0.01};
  std::vector<double> log_m, log_dt, log_dw;
  bool oracle_ok = true;
  for (int m : {1, 2, 4, 8, 16}) {
    std::vector<double> rms_dt, rms_dw;
    double analytic_dt = 0.0, analytic_dw = 0.0;
    for (double f : fracs) {
      const GlmParams gs{m, t_width, Rep::time, t_width * f, 0.0};
      const GlmParams gi{m, w_width, Rep::frequency, w_width * f, 0.0};
      const GlmRunResult run = entangled_hl_experiment(gs, gi, ch, 10000, 42, 2);
      rms_dt.push_back(run.campaign.rms_dt);
      rms_dw.push_back(run.campaign.rms_dw);
      analytic_dt = run.analytic_std_dt;
      analytic_dw = run.analytic_std_dw;
    }
    const Extrapolation ext_dt = epsilon_extrapolate(fracs, rms_dt);
    const Extrapolation ext_dw = epsilon_extrapolate(fracs, rms_dw);
    const bool m_ok = std::abs(ext_dt.value / analytic_dt - 1.0) <= 0.03 &&
                      std::abs(ext_dw.value / analytic_dw - 1.0) <= 0.03;
    oracle_ok = oracle_ok && m_ok;
    c.note("M = " + std::to_string(m) + ": rms(dt) " + fmt(ext_dt.value) +
           " (oracle " + fmt(analytic_dt) + "), rms(dw) " + fmt(ext_dw.value) +
           " (oracle " + fmt(analytic_dw) + ")");
    log_m.push_back(std::log(static_cast<double>(m)));
    log_dt.push_back(std::log(ext_dt.value));
    log_dw.push_back(std::log(ext_dw.value));
  }
  const LineFit fit_dt = fit_line(log_m, log_dt);
  const LineFit fit_dw = fit_line(log_m, log_dw);
  c.require(std::abs(fit_dt.slope + 1.0) <= 0.05,
            "log-log slope of rms(dt) = " + fmt(fit_dt.slope));
  c.require(std::abs(fit_dw.slope + 1.0) <= 0.05,
            "log-log slope of rms(dw) = " + fmt(fit_dw.slope));
  c.require(oracle_ok,
            "extrapolated rms within 3% of the closed-form propagation at "
            "every M");
  return c;
}

Criterion direct_glm_benchmark() {
  Criterion c{7, "direct-glm-benchmark"};
  const double w = 5.0;
  const std::vector<double> fracs = {0.04, 0.02, 0.01};
  for (int m : {1, 4}) {
    std::vector<double> rms;
    for (double f : fracs) {
      const GlmParams g{m, w, Rep::frequency, w * f, 0.0};
      const GlmRunResult run = direct_glm_delay_experiment(g, 3.0, 20000, 42, 2);
      rms.push_back(run.campaign.rms_dt);
    }
    const Extrapolation ext = epsilon_extrapolate(fracs, rms);
    const double target = 1.0 / (2.0 * m * w);
    c.require(std::abs(ext.value / target - 1.0) <= 0.03,
              "M = " + std::to_string(m) + ": extrapolated rms " +
                  fmt(ext.value) + " within 3% of 1/(2MW) = " + fmt(target));
  }
  return c;
}

Criterion sdc_analogy() {
  Criterion c{8, "superdense-coding-analogy"};
  int decoded = 0;
  double worst = 0.0;
  for (int b1 = 0; b1 < 2; ++b1) {
    for (int b2 = 0; b2 < 2; ++b2) {
      const SdcDecodeResult d = sdc_encode_decode(b1, b2);
      if (d.b1 == b1 && d.b2 == b2 && d.prob_deviation < 1e-12) ++decoded;
      worst = std::max(worst, sdc_operator_identity(b1, b2));
    }
  }
  c.require(decoded == 4, "all four bit pairs decode deterministically");
  c.require(worst < 1e-12,
            "conjugation identity residual " + fmt(worst) + " < 1e-12");
  return c;
}

Criterion entropy_consistency() {
  Criterion c{9, "entropy-consistency"};
  std::mt19937 gen(1009);
  std::uniform_real_distribution<double> dist(0.05, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const BiphotonParams p{dist(gen), dist(gen)};
    worst = std::max(worst, std::abs(mu_A(p) - rms_T(p) * rms_W(p)) /
                                std::max(1.0, mu_A(p)));
  }
  c.require(worst < 1e-10,
            "purity parameter equals T*W at 100 random points, worst " +
                fmt(worst));

  const BiphotonParams p{2.0, 0.8};
  const SchmidtSpectrum sp = schmidt_spectrum_oracle(p);
  const double two_tw = 2.0 * rms_T(p) * rms_W(p);
  c.require(std::abs(sp.trace - 1.0) <= 1e-6,
            "oracle spectrum sums to " + fmt(sp.trace));
  c.require(std::abs(sp.participation_ratio / two_tw - 1.0) <= 0.01,
            "participation ratio " + fmt(sp.participation_ratio) +
                " within 1% of 2TW = " + fmt(two_tw));
  c.note("entropy: closed form " + fmt(entanglement_entropy_closed_form(p)) +
         " bits, oracle von Neumann " + fmt(sp.entropy_bits) +
         " bits, difference " +
         fmt(sp.entropy_bits - entanglement_entropy_closed_form(p)) +
         " bits (informational)");

  const BiphotonParams p2{2.5, 0.5};
  const SchmidtSpectrum sp2 =
      schmidt_spectrum_oracle(p2, QuadratureGrid{1024, 6.0, false, 5e-3});
  const double two_tw2 = 2.0 * rms_T(p2) * rms_W(p2);
  c.require(std::abs(sp2.trace - 1.0) <= 1e-6,
            "larger-TW spectrum sums to " + fmt(sp2.trace));
  c.require(std::abs(sp2.participation_ratio / two_tw2 - 1.0) <= 0.01,
            "participation ratio " + fmt(sp2.participation_ratio) +
                " within 1% of 2TW = " + fmt(two_tw2));
  return c;
}

bool same_file_bytes(const std::string& a, const std::string& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  std::ostringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return sa.str() == sb.str();
}

Criterion reproducibility() {
  Criterion c{10, "byte-reproducibility"};
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "qel_acceptance_repro";
  fs::remove_all(root);

  ScenarioConfig mc = default_config(Kind::monte_carlo);
  mc.n_trials = 2000;
  ScenarioConfig hl = default_config(Kind::hl_scan);
  hl.n_trials = 500;
  hl.m_list = {1, 2, 4};

  const std::vector<std::pair<std::string, ScenarioConfig>> cases = {
      {"mc", mc}, {"hl", hl}};
  for (const auto& [tag, config] : cases) {
    const std::string d1 = (root / (tag + "_t1")).string();
    const std::string d3 = (root / (tag + "_t3")).string();
    const ScenarioOutcome o1 = run_scenario(config, d1, 1);
    const ScenarioOutcome o3 = run_scenario(config, d3, 3);
    bool all_same = o1.artifacts.size() == o3.artifacts.size();
    for (size_t i = 0; all_same && i < o1.artifacts.size(); ++i) {
      all_same = same_file_bytes(o1.artifacts[i], o3.artifacts[i]);
    }
    c.require(all_same, tag + ": artifacts byte-identical for 1 vs 3 workers");
    const ScenarioOutcome o1b = run_scenario(config, d1, 1);
    c.require(o1b.summary_text == o1.summary_text,
              tag + ": re-run summary byte-identical");
  }
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  results.push_back(structural_exactness());
  results.push_back(factorization());
  results.push_back(arthurs_kelly_circumvention());
  results.push_back(bound_machinery());
  results.push_back(loss_robustness());
  results.push_back(heisenberg_scaling());
  results.push_back(direct_glm_benchmark());
  results.push_back(sdc_analogy());
  results.push_back(entropy_consistency());
  results.push_back(reproducibility());

  int failures = 0;
  for (const Criterion& c : results) {
    std::printf("criterion %02d %-32s %s\n", c.id, c.name.c_str(),
                c.pass ? "PASS" : "FAIL");
    for (const std::string& d : c.details) std::printf("%s\n", d.c_str());
    if (!c.pass) ++failures;
  }
  std::printf("acceptance: %d/%zu criteria passed\n",
              static_cast<int>(results.size()) - failures, results.size());
  return failures;
}
