#include <cmath>
#include <random>

#include "doctest.h"
#include "qelidar/biphoton.hpp"
#include "qelidar/channel.hpp"
#include "test_support.hpp"

using namespace qel;

TEST_CASE("truth to channel conversions and inverses") {
  const TargetTruth still{0.0, 0.0, 100.0, 1.0};
  const ChannelParams quiet = truth_to_channel(still, 5.0);
  CHECK(quiet.delta_t_s == 0.0);
  CHECK(quiet.delta_omega_s == 0.0);

  const TargetTruth t{1.5, 0.001, 100.0, 1.0};
  const ChannelParams ch = truth_to_channel(t, 5.0);
  CHECK(ch.delta_t_s == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(ch.delta_omega_s == doctest::Approx(0.2).epsilon(1e-14));

  std::mt19937 gen(31);
  std::uniform_real_distribution<double> pos(0.1, 50.0), v(-0.4, 0.4);
  for (int i = 0; i < 100; ++i) {
    const TargetTruth truth{pos(gen), v(gen), pos(gen) * 10.0, 1.0};
    const ChannelParams c = truth_to_channel(truth, 0.0);
    double r = 0.0, vel = 0.0;
    estimates_to_truth(c.delta_t_s, c.delta_omega_s, truth.carrier,
                       truth.light_speed, &r, &vel);
    CHECK(r == doctest::Approx(truth.range).epsilon(1e-12));
    CHECK(vel == doctest::Approx(truth.radial_velocity).epsilon(1e-12));
  }

  CHECK_THROWS_AS(validate(TargetTruth{-1.0, 0.0, 1.0, 1.0}), QelError);
  CHECK_THROWS_AS(validate(TargetTruth{1.0, 2.0, 1.0, 1.0}), QelError);
}

TEST_CASE("trivial channel leaves the state unchanged") {
  const BiphotonParams p{2.0, 0.7, 0.3, 1.0};
  const GaussianAmplitude s = build_biphoton(p);
  const GaussianAmplitude t =
      apply_target_channel(s, signal_time_label(), {0.0, 0.0, 0.0, 1.0});
  CHECK(max_param_difference(s, t) < 1e-14);
}

TEST_CASE("channel shifts the signal time and frequency means") {
  const BiphotonParams p{2.0, 0.7};
  const ChannelParams ch{3.0, 0.2, 5.0, 1.0};
  const GaussianAmplitude s = build_biphoton(p);
  const GaussianAmplitude t = apply_target_channel(s, signal_time_label(), ch);

  const Vec mean_before = measurement_density(s).mean;
  const Vec mean_after = measurement_density(t).mean;
  CHECK(mean_after(0) - mean_before(0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(mean_after(1) == doctest::Approx(mean_before(1)).epsilon(1e-12));

  const GaussianAmplitude f0 = fourier(s, signal_time_label());
  const GaussianAmplitude f1 = fourier(t, signal_time_label());
  CHECK(measurement_density(f1).mean(0) - measurement_density(f0).mean(0) ==
        doctest::Approx(0.2).epsilon(1e-12));
  CHECK(norm_error(t) < 1e-10);
}

TEST_CASE("channel equals the directly shifted-and-phased state") {
  // psi(t_s - dt_s, t_i - dt_i) * exp(-i dw_s (t_s - dt_s/2)), built by hand
  const BiphotonParams p{2.0, 0.7, 0.4, 1.2};
  const ChannelParams ch{3.0, 0.2, 5.0, 1.0};
  GaussianAmplitude s = build_biphoton(p);
  GaussianAmplitude via_channel =
      apply_target_channel(s, signal_time_label(), ch);
  via_channel =
      apply_idler_storage(via_channel, idler_time_label(), ch.delta_t_i);

  Vec d(2);
  d << ch.delta_t_s, ch.delta_t_i;
  const CMat A = s.quadratic();
  CVec b = s.linear() + A * d.cast<Cplx>();
  b(0) += Cplx(0.0, -ch.delta_omega_s);
  const Cplx c_direct =
      s.log_norm() - 0.5 * (d.cast<Cplx>().transpose() * A * d.cast<Cplx>())(0) -
      (s.linear().transpose() * d.cast<Cplx>())(0) +
      Cplx(0.0, 0.5 * ch.delta_omega_s * ch.delta_t_s);
  const GaussianAmplitude direct =
      renormalized(A, b, c_direct, s.labels());

  CHECK(max_param_difference(via_channel, direct) < 1e-12);
  // identical global phase, not merely equal up to phase
  CHECK(std::abs(std::exp(via_channel.log_norm() - direct.log_norm()) - 1.0) <
        1e-12);
}

TEST_CASE("idler storage commutes with the target channel") {
  const BiphotonParams p{1.4, 0.5, 0.1, 0.9};
  const ChannelParams ch{2.0, -0.3, 4.0, 1.0};
  const GaussianAmplitude s = build_biphoton(p);
  GaussianAmplitude a = apply_target_channel(s, signal_time_label(), ch);
  a = apply_idler_storage(a, idler_time_label(), ch.delta_t_i);
  GaussianAmplitude b = apply_idler_storage(s, idler_time_label(), ch.delta_t_i);
  b = apply_target_channel(b, signal_time_label(), ch);
  CHECK(max_param_difference(a, b) < 1e-12);

  const GaussianAmplitude zero =
      apply_idler_storage(s, idler_time_label(), 0.0);
  CHECK(max_param_difference(zero, s) < 1e-14);
  CHECK(measurement_density(b).mean(1) -
            measurement_density(s).mean(1) ==
        doctest::Approx(ch.delta_t_i).epsilon(1e-12));
}

TEST_CASE("survival draws and waiting times") {
  CounterRng always(1, 0, kSurvivalLane);
  CHECK(transmissions_until_k_returns(1.0, 1, always) == 1);

  double sum1 = 0.0, sum2 = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    CounterRng rng(9, i, kSurvivalLane);
    sum1 += static_cast<double>(transmissions_until_k_returns(0.01, 1, rng));
  }
  for (int i = 0; i < n; ++i) {
    CounterRng rng(10, i, kSurvivalLane);
    sum2 += static_cast<double>(transmissions_until_k_returns(0.01, 2, rng));
  }
  // geometric: mean 100, sd ~ 99.5; negative binomial k=2: mean 200
  const double se1 = std::sqrt((1.0 - 0.01) / (0.01 * 0.01) / n);
  const double se2 = std::sqrt(2.0 * (1.0 - 0.01) / (0.01 * 0.01) / n);
  CHECK(std::abs(sum1 / n - 100.0) < 4.0 * se1);
  CHECK(std::abs(sum2 / n - 200.0) < 4.0 * se2);

  CHECK_THROWS_AS(survival_trial(0.0, 1, 2), QelError);
  CHECK_THROWS_AS(survival_trial(1.5, 1, 2), QelError);
  CHECK_THROWS_AS(validate(ChannelParams{0, 0, 0, 0.0}), QelError);
}
