#pragma once

// Downconverter biphoton: a two-coordinate Gaussian amplitude over signal and
// idler arrival times,
//
//   psi(t_S, t_I) ~ exp(-t_minus^2 / 4 sigma_cor^2 - t_plus^2 / 4 sigma_coh^2
//                        - i (delta_omega t_minus / 2 + omega_p t_plus)),
//
// with t_minus = t_S - t_I and t_plus = (t_S + t_I) / 2, plus its summary
// statistics and an independent grid-diagonalization oracle for the Schmidt
// spectrum of the reduced signal state.

#include <vector>

#include "qelidar/gaussian_state.hpp"

namespace qel {

struct BiphotonParams {
  double sigma_coh = 1.0;   // pump coherence time (u)
  double sigma_cor = 1.0;   // correlation time (u)
  double delta_omega = 0.0; // signal-idler carrier difference (rad/u)
  double omega_p = 0.0;     // pump frequency (rad/u)
};

void validate(const BiphotonParams& p);

inline constexpr int kSignalPhotonId = 0;
inline constexpr int kIdlerPhotonId = 1;
CoordLabel signal_time_label();
CoordLabel idler_time_label();

GaussianAmplitude build_biphoton(const BiphotonParams& p);

// marginal rms duration and bandwidth of either photon
double rms_T(const BiphotonParams& p);
double rms_W(const BiphotonParams& p);

// closed-form purity parameter of the reduced state; equals T*W identically
double mu_A(const BiphotonParams& p);

// log2(2 T W); the collision (Renyi-2) entropy of the reduced state. The
// oracle's von Neumann entropy is reported alongside, not forced to agree.
double entanglement_entropy_closed_form(const BiphotonParams& p);

struct QuadratureGrid {
  int points = 512;
  double span_sigmas = 6.0;  // half-width in units of max(sigma_coh, sigma_cor/2)
  bool refine = true;        // doubled-grid convergence check
  double refine_tol = 5e-3;  // relative participation-ratio drift allowed
};

struct SchmidtSpectrum {
  std::vector<double> eigenvalues;  // descending
  double trace = 0.0;               // should be 1 within quadrature error
  double participation_ratio = 0.0; // (sum l)^2 / sum l^2
  double entropy_bits = 0.0;        // -sum l log2 l on the normalized spectrum
  double geometric_z = 0.0;         // fit l_n ~ (1 - z) z^n
  double geometric_fit_residual = 0.0;
  double refinement_change = 0.0;   // relative PR change under grid doubling
  int grid_points = 0;
  double grid_span = 0.0;
};

// Discretizes the reduced signal kernel on a midpoint grid and diagonalizes
// it; independent of the closed-form Gaussian algebra above.
SchmidtSpectrum schmidt_spectrum_oracle(const BiphotonParams& p,
                                        const QuadratureGrid& grid = {});

}  // namespace qel
