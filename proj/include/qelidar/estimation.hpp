#pragma once

// Quantum Fisher information and Cramer-Rao machinery for the two-parameter
// family theta = [delta_t_s, delta_omega_s]. The analytic results for the
// biphoton receiver state are
//
//   J = 4 diag[W^2, T^2],   |<[L_dt, L_dw]>| = 4,
//
// and the cost-weighted bound evaluated here is
//
//   tr[G V] >= tr[G J^{-1}] + sqrt(det G) / det(J) * |<[L_dt, L_dw]>|.
//
// Every analytic value has a finite-difference overlap oracle next to it.

#include "qelidar/biphoton.hpp"
#include "qelidar/channel.hpp"

namespace qel {

// parameter order is [delta_t_s, delta_omega_s] everywhere

struct CostMatrix {
  Mat G;  // 2x2 real symmetric PSD
};

void validate(const CostMatrix& g);

struct CRReport {
  Mat qfi;                      // 2x2
  double commutator_magnitude;  // 4 for all valid params
  double rhs;                   // bound for the supplied cost matrix
  double dt_min;                // sqrt of rhs at G = diag[1, 0]
  double dw_min;                // sqrt of rhs at G = diag[0, 1]
  double product_bound;         // (1 + 2 T W) / (8 T^2 W^2)
};

GaussianAmplitude receiver_state(const BiphotonParams& p,
                                 const ChannelParams& ch);

Mat qfi_analytic(const BiphotonParams& p);

struct FdSteps {
  double dt = 0.0;  // 0 -> default 1e-3 / W
  double dw = 0.0;  // 0 -> default 1e-3 / T
};

// Central-difference overlap oracle; evaluates at the given step and at half
// the step and raises StepTooLarge when the two disagree beyond 1e-5
// relative. Returns the half-step evaluation.
Mat qfi_numeric(const BiphotonParams& p, const ChannelParams& ch,
                FdSteps steps = {});

double commutator_term();  // analytic
double commutator_term_numeric(const BiphotonParams& p,
                               const ChannelParams& ch, FdSteps steps = {});

double cr_rhs(const CostMatrix& g, const BiphotonParams& p);

double product_bound(const BiphotonParams& p);
// Numerical route: maximizes the z-parameterized cost-matrix bound on a log
// grid with golden-section refinement, then minimizes over the free marginal.
double product_bound_numeric(const BiphotonParams& p);

CRReport make_cr_report(const CostMatrix& g, const BiphotonParams& p);

}  // namespace qel
