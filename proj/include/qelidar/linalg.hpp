#pragma once

// Shared dense linear-algebra helpers (thin layer over Eigen).

#include <Eigen/Dense>
#include <complex>

namespace qel {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// log of the n-dimensional Gaussian integral
//   integral exp(-x^T M x / 2 + v^T x) dx
// for complex symmetric M with positive-definite real part. Evaluated by
// sequential elimination; taking the principal log of each pivot reproduces
// the phase of iterated one-dimensional integration, so the branch is the
// physically correct one.
Cplx gaussian_integral_log(CMat M, CVec v);

// Symmetric PSD square root via eigendecomposition (deterministic for
// identical input). Small negative eigenvalues from roundoff are clamped.
Mat symmetric_sqrt(const Mat& S);

double min_symmetric_eigenvalue(const Mat& S);
double symmetric_condition_number(const Mat& S);

}  // namespace qel
