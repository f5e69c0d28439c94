#include "qelidar/biphoton.hpp"

#include <cmath>
#include <numbers>

namespace qel {

void validate(const BiphotonParams& p) {
  if (!(p.sigma_coh > 0.0) || !std::isfinite(p.sigma_coh) ||
      !(p.sigma_cor > 0.0) || !std::isfinite(p.sigma_cor)) {
    fail(ErrorCode::invalid_params,
         "biphoton: sigma_coh and sigma_cor must be positive and finite");
  }
  if (!std::isfinite(p.delta_omega) || !std::isfinite(p.omega_p)) {
    fail(ErrorCode::invalid_params, "biphoton: carriers must be finite");
  }
}

CoordLabel signal_time_label() {
  return {kSignalPhotonId, Role::signal, Rep::time};
}

CoordLabel idler_time_label() {
  return {kIdlerPhotonId, Role::idler, Rep::time};
}

GaussianAmplitude build_biphoton(const BiphotonParams& p) {
  validate(p);
  const double qc = 1.0 / (2.0 * p.sigma_cor * p.sigma_cor);
  const double qh = 1.0 / (8.0 * p.sigma_coh * p.sigma_coh);
  CMat A(2, 2);
  A << Cplx(qc + qh, 0.0), Cplx(qh - qc, 0.0),
       Cplx(qh - qc, 0.0), Cplx(qc + qh, 0.0);
  CVec b(2);
  b << Cplx(0.0, -0.5 * (p.delta_omega + p.omega_p)),
       Cplx(0.0, -0.5 * (p.omega_p - p.delta_omega));
  return make_state(A, b, {signal_time_label(), idler_time_label()});
}

double rms_T(const BiphotonParams& p) {
  validate(p);
  return std::sqrt(p.sigma_coh * p.sigma_coh +
                   0.25 * p.sigma_cor * p.sigma_cor);
}

double rms_W(const BiphotonParams& p) {
  validate(p);
  return std::sqrt(1.0 / (16.0 * p.sigma_coh * p.sigma_coh) +
                   1.0 / (4.0 * p.sigma_cor * p.sigma_cor));
}

double mu_A(const BiphotonParams& p) {
  validate(p);
  const double r = p.sigma_coh / p.sigma_cor;
  return std::sqrt(0.25 * (r * r + 1.0 / (16.0 * r * r)) + 0.125);
}

double entanglement_entropy_closed_form(const BiphotonParams& p) {
  const double tw = rms_T(p) * rms_W(p);
  // mu_A and T W are the same quantity through two algebraic routes
  if (std::abs(mu_A(p) - tw) > 1e-10 * std::max(1.0, tw)) {
    fail(ErrorCode::numerical_error,
         "entropy: purity parameter and T*W disagree");
  }
  return std::log2(2.0 * tw);
}

namespace {

SchmidtSpectrum diagonalize_reduced_kernel(const BiphotonParams& p, int n,
                                           double span) {
  const double h = 2.0 * span / n;
  Vec t(n);
  for (int i = 0; i < n; ++i) t(i) = -span + h * (i + 0.5);

  // psi evaluated directly from the defining formula; never through the
  // Gaussian-parameter machinery this oracle is checking.
  const double norm =
      1.0 / std::sqrt(2.0 * std::numbers::pi * p.sigma_coh * p.sigma_cor);
  const double qc = 1.0 / (4.0 * p.sigma_cor * p.sigma_cor);
  const double qh = 1.0 / (16.0 * p.sigma_coh * p.sigma_coh);
  const bool complex_phases = p.delta_omega != 0.0 || p.omega_p != 0.0;

  Eigen::SelfAdjointEigenSolver<CMat> csolver;
  Eigen::SelfAdjointEigenSolver<Mat> rsolver;
  Vec lambda;
  if (complex_phases) {
    CMat Psi(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double d = t(i) - t(j);
        const double s = t(i) + t(j);
        const double mag = norm * std::exp(-d * d * qc - s * s * qh);
        const double phase = -0.5 * (p.delta_omega * d + p.omega_p * s);
        Psi(i, j) = std::polar(mag, phase);
      }
    }
    const CMat K = (Psi * Psi.adjoint()) * (h * h);
    csolver.compute(K, Eigen::EigenvaluesOnly);
    lambda = csolver.eigenvalues();
  } else {
    Mat Psi(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double d = t(i) - t(j);
        const double s = t(i) + t(j);
        Psi(i, j) = norm * std::exp(-d * d * qc - s * s * qh);
      }
    }
    const Mat K = (Psi * Psi.transpose()) * (h * h);
    rsolver.compute(K, Eigen::EigenvaluesOnly);
    lambda = rsolver.eigenvalues();
  }

  SchmidtSpectrum out;
  out.grid_points = n;
  out.grid_span = span;
  out.eigenvalues.assign(lambda.data(), lambda.data() + lambda.size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            std::greater<double>());
  double sum = 0.0, sum2 = 0.0;
  for (double l : out.eigenvalues) {
    if (l < -1e-9) {
      fail(ErrorCode::numerical_error,
           "schmidt oracle: eigenvalue below -1e-9");
    }
    sum += l;
    sum2 += l * l;
  }
  out.trace = sum;
  out.participation_ratio = sum * sum / sum2;

  double entropy = 0.0;
  for (double l : out.eigenvalues) {
    const double ln = l / sum;
    if (ln > 1e-15) entropy -= ln * std::log2(ln);
  }
  out.entropy_bits = entropy;

  // least-squares fit of log lambda_n against n over the reliable head
  std::vector<double> logs;
  for (double l : out.eigenvalues) {
    const double ln = l / sum;
    if (ln > 1e-7) logs.push_back(std::log(ln));
  }
  if (logs.size() >= 2) {
    const double m = static_cast<double>(logs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t k = 0; k < logs.size(); ++k) {
      sx += k;
      sy += logs[k];
      sxx += static_cast<double>(k) * k;
      sxy += k * logs[k];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    out.geometric_z = std::exp(slope);
    double resid = 0.0;
    const double z = out.geometric_z;
    for (size_t k = 0; k < logs.size(); ++k) {
      const double model = (1.0 - z) * std::pow(z, static_cast<double>(k));
      resid = std::max(resid, std::abs(out.eigenvalues[k] / sum - model));
    }
    out.geometric_fit_residual = resid;
  }
  return out;
}

}  // namespace

SchmidtSpectrum schmidt_spectrum_oracle(const BiphotonParams& p,
                                        const QuadratureGrid& grid) {
  validate(p);
  const double small = std::min(p.sigma_cor / 2.0, p.sigma_coh);
  // the reduced state extends over the photon duration T >= both scales
  const double large = rms_T(p);
  const double span = grid.span_sigmas * large;
  const double step = 2.0 * span / grid.points;
  // >= 8 points per smallest scale, span >= 8 largest scales total
  if (step * 8.0 > small || 2.0 * span < 8.0 * large) {
    fail(ErrorCode::grid_too_coarse,
         "schmidt oracle: grid does not resolve the requested scales");
  }
  SchmidtSpectrum coarse = diagonalize_reduced_kernel(p, grid.points, span);
  if (!grid.refine) return coarse;
  SchmidtSpectrum fine = diagonalize_reduced_kernel(p, grid.points * 2, span);
  fine.refinement_change =
      std::abs(fine.participation_ratio - coarse.participation_ratio) /
      fine.participation_ratio;
  if (fine.refinement_change > grid.refine_tol) {
    fail(ErrorCode::grid_too_coarse,
         "schmidt oracle: participation ratio not converged under refinement");
  }
  return fine;
}

}  // namespace qel
