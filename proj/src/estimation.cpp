#include "qelidar/estimation.hpp"

#include <cmath>
#include <functional>

namespace qel {

void validate(const CostMatrix& g) {
  if (g.G.rows() != 2 || g.G.cols() != 2 ||
      std::abs(g.G(0, 1) - g.G(1, 0)) > 1e-12) {
    fail(ErrorCode::invalid_params, "cost matrix must be 2x2 symmetric");
  }
  if (min_symmetric_eigenvalue(g.G) < -1e-12) {
    fail(ErrorCode::invalid_params, "cost matrix must be PSD");
  }
}

GaussianAmplitude receiver_state(const BiphotonParams& p,
                                 const ChannelParams& ch) {
  GaussianAmplitude s = build_biphoton(p);
  s = apply_target_channel(s, signal_time_label(), ch);
  return apply_idler_storage(s, idler_time_label(), ch.delta_t_i);
}

Mat qfi_analytic(const BiphotonParams& p) {
  const double w = rms_W(p);
  const double t = rms_T(p);
  Mat j(2, 2);
  j << 4.0 * w * w, 0.0, 0.0, 4.0 * t * t;
  return j;
}

namespace {

struct OverlapDerivatives {
  // G(j,k) = <d_j psi | d_k psi>, a(j) = <psi | d_j psi>
  CMat G{2, 2};
  CVec a{2};
};

OverlapDerivatives overlap_derivatives(const BiphotonParams& p,
                                       const ChannelParams& ch, double h_dt,
                                       double h_dw) {
  auto state_at = [&](double ddt, double ddw) {
    ChannelParams c = ch;
    c.delta_t_s += ddt;
    c.delta_omega_s += ddw;
    return receiver_state(p, c);
  };
  const GaussianAmplitude center = state_at(0.0, 0.0);
  const GaussianAmplitude plus[2] = {state_at(h_dt, 0.0), state_at(0.0, h_dw)};
  const GaussianAmplitude minus[2] = {state_at(-h_dt, 0.0),
                                      state_at(0.0, -h_dw)};
  const double h[2] = {h_dt, h_dw};

  OverlapDerivatives d;
  for (int j = 0; j < 2; ++j) {
    d.a(j) = (overlap(center, plus[j]) - overlap(center, minus[j])) /
             (2.0 * h[j]);
    for (int k = 0; k < 2; ++k) {
      const Cplx pp = overlap(plus[j], plus[k]);
      const Cplx pm = overlap(plus[j], minus[k]);
      const Cplx mp = overlap(minus[j], plus[k]);
      const Cplx mm = overlap(minus[j], minus[k]);
      d.G(j, k) = (pp - pm - mp + mm) / (4.0 * h[j] * h[k]);
    }
  }
  return d;
}

Mat qfi_from_derivatives(const OverlapDerivatives& d) {
  Mat j(2, 2);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      j(r, c) = 4.0 * (std::real(d.G(r, c)) + std::real(d.a(r) * d.a(c)));
    }
  }
  return 0.5 * (j + j.transpose());
}

FdSteps effective_steps(const BiphotonParams& p, FdSteps steps) {
  if (steps.dt <= 0.0) steps.dt = 1e-3 / rms_W(p);
  if (steps.dw <= 0.0) steps.dw = 1e-3 / rms_T(p);
  return steps;
}

}  // namespace

Mat qfi_numeric(const BiphotonParams& p, const ChannelParams& ch,
                FdSteps steps) {
  steps = effective_steps(p, steps);
  const Mat coarse =
      qfi_from_derivatives(overlap_derivatives(p, ch, steps.dt, steps.dw));
  const Mat fine = qfi_from_derivatives(
      overlap_derivatives(p, ch, 0.5 * steps.dt, 0.5 * steps.dw));
  const double scale = fine.cwiseAbs().maxCoeff();
  if ((coarse - fine).cwiseAbs().maxCoeff() > 1e-5 * scale) {
    fail(ErrorCode::step_too_large,
         "qfi_numeric: halving the step moved the result; step too large");
  }
  return fine;
}

double commutator_term() { return 4.0; }

double commutator_term_numeric(const BiphotonParams& p,
                               const ChannelParams& ch, FdSteps steps) {
  steps = effective_steps(p, steps);
  const OverlapDerivatives d = overlap_derivatives(p, ch, steps.dt, steps.dw);
  // <[L1, L2]> = 8i [Im G_12 + Im(a_1 conj(a_2))]
  return 8.0 *
         std::abs(std::imag(d.G(0, 1)) + std::imag(d.a(0) * std::conj(d.a(1))));
}

double cr_rhs(const CostMatrix& g, const BiphotonParams& p) {
  validate(g);
  const Mat j = qfi_analytic(p);
  const double det_j = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
  if (!(det_j > 1e-300)) {
    fail(ErrorCode::singular_qfi, "cr_rhs: QFI is singular");
  }
  Mat jinv(2, 2);
  jinv << j(1, 1) / det_j, -j(0, 1) / det_j, -j(1, 0) / det_j, j(0, 0) / det_j;
  const double det_g = g.G(0, 0) * g.G(1, 1) - g.G(0, 1) * g.G(1, 0);
  return (g.G * jinv).trace() +
         std::sqrt(std::max(det_g, 0.0)) / det_j * commutator_term();
}

double product_bound(const BiphotonParams& p) {
  validate(p);
  const double t2 =
      p.sigma_coh * p.sigma_coh + 0.25 * p.sigma_cor * p.sigma_cor;
  const double w2 = 1.0 / (16.0 * p.sigma_coh * p.sigma_coh) +
                    1.0 / (4.0 * p.sigma_cor * p.sigma_cor);
  const double t2w2 = t2 * w2;
  return (1.0 + 2.0 * std::sqrt(t2w2)) / (8.0 * t2w2);
}

namespace {

double golden_max(const std::function<double(double)>& f, double lo,
                  double hi) {
  // maximize over [lo, hi] in log coordinates
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(lo), b = std::log(hi);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(std::exp(x1));
  double f2 = f(std::exp(x2));
  for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(std::exp(x1));
    }
  }
  return std::max(f1, f2);
}

}  // namespace

double product_bound_numeric(const BiphotonParams& p) {
  const double t = rms_T(p);
  const double w = rms_W(p);
  const double t2 = t * t;
  const double w2 = w * w;

  // given the Doppler marginal y = (dw error)^2, the z-parameterized cost
  // matrix yields the bound
  //   (dt dw)^2 >= max_z (y / W^2) (1/4 + sqrt(z)/(4 T W) + z (1/4 - T^2 y))
  auto inner_max = [&](double y) {
    auto bracket = [&](double z) {
      return (y / w2) *
             (0.25 + 0.25 * std::sqrt(z) / (t * w) + z * (0.25 - t2 * y));
    };
    double lo = 1e-6 / (t2 * w2);
    double hi = 1e6 / (t2 * w2);
    for (int grow = 0; grow < 60; ++grow) {
      double best = -1.0;
      double best_z = lo;
      for (int i = 0; i < 64; ++i) {
        const double z =
            lo * std::pow(hi / lo, static_cast<double>(i) / 63.0);
        const double v = bracket(z);
        if (v > best) {
          best = v;
          best_z = z;
        }
      }
      if (best_z > lo * 1.5 && best_z < hi / 1.5) {
        return golden_max(bracket, best_z / 4.0, best_z * 4.0);
      }
      if (best_z <= lo * 1.5) {
        lo /= 1e3;
      } else {
        hi *= 1e3;
      }
    }
    fail(ErrorCode::numerical_error, "product_bound_numeric: no interior max");
  };

  // minimize over y > 1/(4 T^2); parameterized as y = (1 + u) / (4 T^2)
  auto bound_sq = [&](double u) { return inner_max((1.0 + u) / (4.0 * t2)); };
  const double lo = 1e-9, hi = 1e9;
  double best = 1e300;
  double best_u = lo;
  for (int i = 0; i < 128; ++i) {
    const double u = lo * std::pow(hi / lo, static_cast<double>(i) / 127.0);
    const double v = bound_sq(u);
    if (v < best) {
      best = v;
      best_u = u;
    }
  }
  const double min_sq =
      -golden_max([&](double u) { return -bound_sq(u); }, best_u / 4.0,
                  best_u * 4.0);
  return std::sqrt(min_sq);
}

CRReport make_cr_report(const CostMatrix& g, const BiphotonParams& p) {
  CRReport r;
  r.qfi = qfi_analytic(p);
  r.commutator_magnitude = commutator_term();
  r.rhs = cr_rhs(g, p);
  CostMatrix gt{(Mat(2, 2) << 1, 0, 0, 0).finished()};
  CostMatrix gw{(Mat(2, 2) << 0, 0, 0, 1).finished()};
  r.dt_min = std::sqrt(cr_rhs(gt, p));
  r.dw_min = std::sqrt(cr_rhs(gw, p));
  r.product_bound = product_bound(p);
  return r;
}

}  // namespace qel
