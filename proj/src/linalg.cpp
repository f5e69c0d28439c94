#include "qelidar/linalg.hpp"

#include <cmath>
#include <numbers>

#include "qelidar/errors.hpp"

namespace qel {

Cplx gaussian_integral_log(CMat M, CVec v) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n || v.size() != n) {
    fail(ErrorCode::dimension_mismatch, "gaussian_integral_log: shape mismatch");
  }
  Cplx acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Cplx d = M(i, i);
    if (!(std::real(d) > 0.0)) {
      fail(ErrorCode::numerical_error,
           "gaussian_integral_log: pivot with non-positive real part, integral diverges");
    }
    acc += 0.5 * (std::log(2.0 * std::numbers::pi) - std::log(d));
    acc += v(i) * v(i) / (2.0 * d);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Cplx f = M(j, i) / d;
      v(j) -= f * v(i);
      for (Eigen::Index k = i + 1; k < n; ++k) {
        M(j, k) -= f * M(i, k);
      }
    }
  }
  return acc;
}

Mat symmetric_sqrt(const Mat& S) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(S);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::numerical_error, "symmetric_sqrt: eigendecomposition failed");
  }
  Vec lam = solver.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    lam(i) = lam(i) > 0.0 ? std::sqrt(lam(i)) : 0.0;
  }
  return solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().transpose();
}

double min_symmetric_eigenvalue(const Mat& S) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(S, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double symmetric_condition_number(const Mat& S) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(S, Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::non_symmetric: return "NonSymmetric";
    case ErrorCode::not_positive_definite: return "NotPositiveDefinite";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::coord_not_found: return "CoordNotFound";
    case ErrorCode::mixed_representation: return "MixedRepresentation";
    case ErrorCode::non_unimodular: return "NonUnimodular";
    case ErrorCode::label_mismatch: return "LabelMismatch";
    case ErrorCode::bad_partition: return "BadPartition";
    case ErrorCode::invalid_params: return "InvalidParams";
    case ErrorCode::invalid_truth: return "InvalidTruth";
    case ErrorCode::invalid_eta: return "InvalidEta";
    case ErrorCode::grid_too_coarse: return "GridTooCoarse";
    case ErrorCode::step_too_large: return "StepTooLarge";
    case ErrorCode::mismatched_m: return "MismatchedM";
    case ErrorCode::non_convergent: return "NonConvergent";
    case ErrorCode::episode_overflow: return "EpisodeOverflow";
    case ErrorCode::singular_qfi: return "SingularQfi";
    case ErrorCode::unknown_key: return "UnknownKey";
    case ErrorCode::type_error: return "TypeError";
    case ErrorCode::missing_required: return "MissingRequired";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::numerical_error: return "NumericalError";
  }
  return "unknown";
}

}  // namespace qel
