#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qelidar/pair_transform.hpp"
#include "test_support.hpp"

using namespace qel;

namespace {

BiphotonParams random_biphoton(std::mt19937& gen) {
  std::uniform_real_distribution<double> sig(0.1, 10.0), cor(0.05, 4.0),
      carrier(-5.0, 5.0);
  return {sig(gen), cor(gen), carrier(gen), carrier(gen)};
}

ChannelParams random_channel(std::mt19937& gen) {
  std::uniform_real_distribution<double> d(-8.0, 8.0), w(-2.0, 2.0);
  return {d(gen), w(gen), d(gen), 1.0};
}

}  // namespace

TEST_CASE("coordinate map: means (5, 3) -> (4, 2)") {
  CMat A = CMat::Identity(2, 2);
  CVec b(2);
  b << Cplx(5.0, 0), Cplx(3.0, 0);  // frequency means 5 and 3
  const GaussianAmplitude s = make_state(
      A, b,
      {CoordLabel{0, Role::signal, Rep::frequency},
       CoordLabel{1, Role::idler, Rep::frequency}});
  const GaussianAmplitude t = apply_sum_difference(s, biphoton_pair());
  const Vec mean = measurement_density(t).mean;
  CHECK(mean(0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(mean(1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("transform round trip is the identity on 100 random states") {
  std::mt19937 gen(41);
  for (int rep = 0; rep < 100; ++rep) {
    const GaussianAmplitude s = qtest::random_state(gen, 2, Rep::frequency);
    const PairSelector pair{s.labels()[0], s.labels()[1]};
    const GaussianAmplitude t =
        apply_sum_difference_inverse(apply_sum_difference(s, pair), pair);
    CHECK(max_param_difference(t, s) < 1e-12);
  }
}

TEST_CASE("transform preserves overlap magnitudes") {
  std::mt19937 gen(42);
  for (int rep = 0; rep < 20; ++rep) {
    const GaussianAmplitude s1 = qtest::random_state(gen, 2, Rep::frequency);
    const GaussianAmplitude s2 = qtest::random_state(gen, 2, Rep::frequency);
    const PairSelector pair{s1.labels()[0], s1.labels()[1]};
    const double before = std::abs(overlap(s1, s2));
    const double after = std::abs(overlap(apply_sum_difference(s1, pair),
                                          apply_sum_difference(s2, pair)));
    CHECK(std::abs(after - before) < 1e-10);
  }
}

TEST_CASE("time-representation construction matches the frequency one") {
  std::mt19937 gen(43);
  for (int rep = 0; rep < 20; ++rep) {
    const BiphotonParams p = random_biphoton(gen);
    const GaussianAmplitude s = build_biphoton(p);
    GaussianAmplitude via_freq = apply_sum_difference(s, biphoton_pair());
    GaussianAmplitude via_time =
        apply_sum_difference_time_route(s, biphoton_pair());
    // harmonize representations before comparing
    via_time = to_rep(via_time, signal_time_label(), Rep::frequency);
    via_time = to_rep(via_time, idler_time_label(), Rep::frequency);
    CHECK(max_param_difference(via_freq, via_time) < 1e-9);
    CHECK(std::abs(phase_offset(via_freq, via_time)) < 1e-9);
  }
}

TEST_CASE("transform factorizes the channel-transformed biphoton exactly") {
  std::mt19937 gen(44);
  for (int rep = 0; rep < 50; ++rep) {
    const BiphotonParams p = random_biphoton(gen);
    const ChannelParams ch = random_channel(gen);
    GaussianAmplitude s = build_biphoton(p);
    s = apply_target_channel(s, signal_time_label(), ch);
    s = apply_idler_storage(s, idler_time_label(), ch.delta_t_i);
    const GaussianAmplitude t = apply_sum_difference(s, biphoton_pair());
    CHECK(cross_coupling(t, {signal_time_label()}, {idler_time_label()}) <
          1e-12);
  }
}

TEST_CASE("post-transform marginals carry the expected parameters") {
  const BiphotonParams p{10.0, 0.1, 0.7, 1.9};
  const ChannelParams ch{3.0, 0.2, 5.0, 1.0};
  GaussianAmplitude s = build_biphoton(p);
  s = apply_target_channel(s, signal_time_label(), ch);
  s = apply_idler_storage(s, idler_time_label(), ch.delta_t_i);
  GaussianAmplitude t = apply_sum_difference(s, biphoton_pair());

  const double sc2 = p.sigma_cor * p.sigma_cor;
  const double sh2 = p.sigma_coh * p.sigma_coh;
  const int is = t.index_of(signal_time_label());

  // signal (average-frequency) coordinate:
  //   exp(-sh^2 (2u - dw_s - w_p)^2 + i u (dt_s + dt_i))
  CHECK(std::real(t.quadratic()(is, is)) ==
        doctest::Approx(8.0 * sh2).epsilon(1e-10));
  CHECK(std::imag(t.quadratic()(is, is)) == doctest::Approx(0.0));
  CHECK(std::real(t.linear()(is)) ==
        doctest::Approx(4.0 * sh2 * (ch.delta_omega_s + p.omega_p))
            .epsilon(1e-10));
  CHECK(std::imag(t.linear()(is)) ==
        doctest::Approx(ch.delta_t_s + ch.delta_t_i).epsilon(1e-10));

  // idler (difference) coordinate in the time representation:
  //   exp(-(t - (dt_s - dt_i)/2)^2 / sigma_cor^2 - i (dw_s + dw) t)
  t = to_rep(t, idler_time_label(), Rep::time);
  const int ii = t.index_of(idler_time_label());
  CHECK(std::real(t.quadratic()(ii, ii)) ==
        doctest::Approx(2.0 / sc2).epsilon(1e-10));
  CHECK(std::real(t.linear()(ii)) ==
        doctest::Approx((ch.delta_t_s - ch.delta_t_i) / sc2).epsilon(1e-10));
  CHECK(std::imag(t.linear()(ii)) ==
        doctest::Approx(-(ch.delta_omega_s + p.delta_omega)).epsilon(1e-10));

  // the wide-band approximation replaces 1/sigma_cor^2 by 4 W^2; small gap
  // in the sigma_coh >> sigma_cor regime
  const double w = rms_W(p);
  CHECK(std::abs(4.0 * w * w * sc2 - 1.0) < 0.01);
}

TEST_CASE("the two end-to-end routes agree up to a constant phase") {
  std::mt19937 gen(45);
  const ChannelParams ch{3.0, 0.2, 5.0, 1.0};
  double first_phase = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const GaussianAmplitude s = qtest::random_state(gen, 2, Rep::frequency);
    const PairSelector pair{s.labels()[0], s.labels()[1]};
    GaussianAmplitude via_entangled = apply_u_entangled_route(s, pair, ch);
    GaussianAmplitude via_product = apply_u_product_route(s, pair, ch);
    via_product = to_rep(via_product, pair.signal, Rep::frequency);
    via_product = to_rep(via_product, pair.idler, Rep::frequency);
    CHECK(max_param_difference(via_entangled, via_product) < 1e-9);
    const double phase = phase_offset(via_entangled, via_product);
    if (rep == 0) {
      first_phase = phase;
      // the constant offset is -dt_s dw_s / 2
      const double expected = std::remainder(-0.5 * ch.delta_t_s * ch.delta_omega_s,
                                             2.0 * std::numbers::pi);
      CHECK(std::abs(std::remainder(phase - expected,
                                    2.0 * std::numbers::pi)) < 1e-9);
    } else {
      CHECK(std::abs(std::remainder(phase - first_phase,
                                    2.0 * std::numbers::pi)) < 1e-9);
    }
  }
}

TEST_CASE("product route: zero channel is the identity") {
  std::mt19937 gen(46);
  const GaussianAmplitude s = qtest::random_state(gen, 2, Rep::frequency);
  const PairSelector pair{s.labels()[0], s.labels()[1]};
  const ChannelParams ch{0.0, 0.0, 0.0, 1.0};
  CHECK(max_param_difference(apply_u_entangled_route(s, pair, ch), s) < 1e-10);
  CHECK(max_param_difference(apply_u_product_route(s, pair, ch), s) < 1e-12);
}

TEST_CASE("factorized route moves the means by the half-shift pattern") {
  const ChannelParams ch{3.0, 0.2, 5.0, 1.0};
  // product-state input in the frequency representation
  GaussianAmplitude input = build_biphoton({1.0, 2.0});
  input = to_rep(input, signal_time_label(), Rep::frequency);
  input = to_rep(input, idler_time_label(), Rep::frequency);
  const GaussianAmplitude out =
      apply_u_product_route(input, biphoton_pair(), ch);

  const Vec freq_mean_before = measurement_density(input).mean;
  const Vec freq_mean_after = measurement_density(out).mean;
  CHECK(freq_mean_after(0) - freq_mean_before(0) ==
        doctest::Approx(0.1).epsilon(1e-12));  // dw_s / 2

  GaussianAmplitude tin = to_rep(input, idler_time_label(), Rep::time);
  GaussianAmplitude tout = to_rep(out, idler_time_label(), Rep::time);
  const int it = tout.index_of(idler_time_label());
  CHECK(measurement_density(tout).mean(it) -
            measurement_density(tin).mean(it) ==
        doctest::Approx(-1.0).epsilon(1e-12));  // (dt_s - dt_i)/2
}

TEST_CASE("estimates are exact affine maps of the outcomes") {
  const Estimates a = estimate_from_outcomes(0.0, -1.0, 5.0, 0.0);
  CHECK(a.delta_t == doctest::Approx(3.0).epsilon(1e-15));
  const Estimates b = estimate_from_outcomes(3.5 / 2.0 + 0.1, 0.0, 0.0, 3.5);
  CHECK(b.delta_omega == doctest::Approx(0.2).epsilon(1e-12));
  const Estimates zero = estimate_from_outcomes(0.0, 0.0, 0.0, 0.0);
  CHECK(zero.delta_t == 0.0);
  CHECK(zero.delta_omega == 0.0);
}

TEST_CASE("estimator distribution: unbiased with the exact widths") {
  std::mt19937 gen(47);
  for (int rep = 0; rep < 10; ++rep) {
    const BiphotonParams p = random_biphoton(gen);
    const ChannelParams ch = random_channel(gen);
    GaussianAmplitude s = build_biphoton(p);
    s = apply_target_channel(s, signal_time_label(), ch);
    s = apply_idler_storage(s, idler_time_label(), ch.delta_t_i);
    GaussianAmplitude t = apply_sum_difference(s, biphoton_pair());
    t = to_rep(t, idler_time_label(), Rep::time);

    const MeasurementDensity d = measurement_density(t);
    const int is = t.index_of(signal_time_label());
    const int ii = t.index_of(idler_time_label());
    const Estimates mean_est = estimate_from_outcomes(
        d.mean(is), d.mean(ii), ch.delta_t_i, p.omega_p);
    CHECK(mean_est.delta_t ==
          doctest::Approx(ch.delta_t_s).epsilon(1e-10));
    CHECK(mean_est.delta_omega ==
          doctest::Approx(ch.delta_omega_s).epsilon(1e-10));

    const EstimatorStds stds = exact_estimator_stds(p);
    CHECK(2.0 * std::sqrt(d.covariance(ii, ii)) ==
          doctest::Approx(stds.dt).epsilon(1e-10));
    CHECK(2.0 * std::sqrt(d.covariance(is, is)) ==
          doctest::Approx(stds.dw).epsilon(1e-10));
  }
}

TEST_CASE("exact estimator widths approach the wide-band limits") {
  const BiphotonParams p{100.0, 0.1};
  const EstimatorStds exact = exact_estimator_stds(p);
  const EstimatorStds asym = asymptotic_estimator_stds(p);
  CHECK(exact.dt / asym.dt == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(exact.dw / asym.dw == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("pair selector validation") {
  std::mt19937 gen(48);
  const GaussianAmplitude s = qtest::random_state(gen, 2, Rep::frequency);
  PairSelector bad{s.labels()[0], s.labels()[0]};
  CHECK_THROWS_AS(apply_sum_difference(s, bad), QelError);
}
