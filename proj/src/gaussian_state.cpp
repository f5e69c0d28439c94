#include "qelidar/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qel {

namespace {

constexpr double kSymTol = 1e-12;

// Re(c) that normalizes exp(-x^T A x/2 + b^T x + c):
//   |psi|^2 integrates to exp(2 Re c) sqrt(pi^n / det Re A) exp(br^T (Re A)^{-1} br)
double normalization_re_c(const CMat& A, const CVec& b) {
  const Mat Ar = A.real();
  const Vec br = b.real();
  Eigen::LLT<Mat> llt(Ar);
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::not_positive_definite,
         "normalization: Re(A) not positive definite");
  }
  double logdet = 0.0;
  const Mat& L = llt.matrixL();
  for (Eigen::Index i = 0; i < Ar.rows(); ++i) logdet += 2.0 * std::log(L(i, i));
  const double quad = br.dot(llt.solve(br));
  const double n = static_cast<double>(Ar.rows());
  return 0.25 * logdet - 0.25 * n * std::log(std::numbers::pi) - 0.5 * quad;
}

void check_labels(const std::vector<CoordLabel>& labels) {
  for (size_t i = 0; i < labels.size(); ++i) {
    for (size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i].photon_id == labels[j].photon_id) {
        fail(ErrorCode::invalid_params,
             "labels: photon_id must be unique within a state");
      }
    }
  }
}

}  // namespace

int GaussianAmplitude::index_of(const CoordLabel& coord) const {
  for (int i = 0; i < size(); ++i) {
    if (same_coord(labels_[i], coord)) return i;
  }
  fail(ErrorCode::coord_not_found, "coordinate not present in state");
}

GaussianAmplitude renormalized(const CMat& A, const CVec& b, Cplx c,
                               std::vector<CoordLabel> labels) {
  GaussianAmplitude s;
  s.A_ = 0.5 * (A + A.transpose());
  s.b_ = b;
  s.labels_ = std::move(labels);
  const double min_eig = min_symmetric_eigenvalue(s.A_.real());
  if (!(min_eig > 0.0)) {
    fail(ErrorCode::not_positive_definite, "Re(A) not positive definite");
  }
  s.condition_ = symmetric_condition_number(s.A_.real());
  s.c_ = Cplx(normalization_re_c(s.A_, s.b_), std::imag(c));
  return s;
}

GaussianAmplitude make_state(const CMat& A, const CVec& b,
                             std::vector<CoordLabel> labels) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || b.size() != n ||
      static_cast<Eigen::Index>(labels.size()) != n) {
    fail(ErrorCode::dimension_mismatch, "make_state: shape mismatch");
  }
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > kSymTol * scale) {
    fail(ErrorCode::non_symmetric, "make_state: A is not symmetric");
  }
  check_labels(labels);
  return renormalized(A, b, Cplx(0.0, 0.0), std::move(labels));
}

GaussianAmplitude fourier(const GaussianAmplitude& s, const CoordLabel& coord) {
  const int i = s.index_of(coord);
  const int n = s.size();
  // +1 for time -> frequency, -1 for the inverse
  const double eps = s.labels()[i].rep == Rep::time ? 1.0 : -1.0;

  const CMat& A = s.quadratic();
  const CVec& b = s.linear();
  const Cplx a = A(i, i);
  CMat A2 = A;
  CVec b2 = b;

  // one-dimensional Gaussian integral over coordinate i with the conjugate
  // variable entering through the linear phase e^{i eps w t}
  A2(i, i) = 1.0 / a;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const Cplx rho = A(i, j);
    A2(i, j) = Cplx(0.0, eps) * rho / a;
    A2(j, i) = A2(i, j);
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      A2(j, k) = A(j, k) - A(i, j) * A(i, k) / a;
    }
    b2(j) = b(j) - b(i) * rho / a;
  }
  b2(i) = Cplx(0.0, eps) * b(i) / a;
  const Cplx c2 = s.log_norm() + b(i) * b(i) / (2.0 * a) - 0.5 * std::log(a);

  std::vector<CoordLabel> labels = s.labels();
  labels[i].rep = labels[i].rep == Rep::time ? Rep::frequency : Rep::time;
  return renormalized(A2, b2, c2, std::move(labels));
}

GaussianAmplitude to_rep(const GaussianAmplitude& s, const CoordLabel& coord,
                         Rep target) {
  const int i = s.index_of(coord);
  if (s.labels()[i].rep == target) return s;
  return fourier(s, coord);
}

namespace {

// substitution x_i -> x_i - d:  b += d A e_i, c -= d^2 A_ii / 2 + d b_i
GaussianAmplitude shift_coordinate(const GaussianAmplitude& s, int i, double d) {
  CVec b2 = s.linear() + d * s.quadratic().col(i);
  const Cplx c2 = s.log_norm() - 0.5 * d * d * s.quadratic()(i, i) -
                  d * s.linear()(i);
  return renormalized(s.quadratic(), b2, c2, s.labels());
}

// multiply by e^{i phase_slope * x_i}
GaussianAmplitude linear_phase(const GaussianAmplitude& s, int i,
                               double phase_slope) {
  CVec b2 = s.linear();
  b2(i) += Cplx(0.0, phase_slope);
  return renormalized(s.quadratic(), b2, s.log_norm(), s.labels());
}

}  // namespace

GaussianAmplitude time_shift(const GaussianAmplitude& s,
                             const CoordLabel& coord, double tau) {
  const int i = s.index_of(coord);
  return s.labels()[i].rep == Rep::time ? shift_coordinate(s, i, tau)
                                        : linear_phase(s, i, tau);
}

GaussianAmplitude freq_shift(const GaussianAmplitude& s,
                             const CoordLabel& coord, double mu) {
  const int i = s.index_of(coord);
  return s.labels()[i].rep == Rep::frequency ? shift_coordinate(s, i, mu)
                                             : linear_phase(s, i, -mu);
}

GaussianAmplitude linear_map(const GaussianAmplitude& s, const Mat& L) {
  const int n = s.size();
  if (L.rows() != n || L.cols() != n) {
    fail(ErrorCode::dimension_mismatch, "linear_map: matrix size mismatch");
  }
  // coordinates touched by L must live in one representation
  Rep rep = Rep::time;
  bool have_rep = false;
  for (int i = 0; i < n; ++i) {
    bool moved = false;
    for (int j = 0; j < n; ++j) {
      const double ref = i == j ? 1.0 : 0.0;
      if (std::abs(L(i, j) - ref) > 0.0 || std::abs(L(j, i) - ref) > 0.0) {
        moved = true;
      }
    }
    if (!moved) continue;
    if (!have_rep) {
      rep = s.labels()[i].rep;
      have_rep = true;
    } else if (s.labels()[i].rep != rep) {
      fail(ErrorCode::mixed_representation,
           "linear_map: mapped coordinates span both representations");
    }
  }

  Eigen::PartialPivLU<Mat> lu(L);
  const double abs_det = std::abs(lu.determinant());
  if (std::abs(abs_det - 1.0) > 1e-12) {
    fail(ErrorCode::non_unimodular, "linear_map: |det L| must be 1");
  }
  const Mat Linv = lu.inverse();
  const CMat A2 = Linv.transpose() * s.quadratic() * Linv;
  const CVec b2 = Linv.transpose() * s.linear();
  return renormalized(A2, b2, s.log_norm(), s.labels());
}

GaussianAmplitude tensor(const GaussianAmplitude& a, const GaussianAmplitude& b) {
  const int na = a.size();
  const int nb = b.size();
  CMat A = CMat::Zero(na + nb, na + nb);
  A.topLeftCorner(na, na) = a.quadratic();
  A.bottomRightCorner(nb, nb) = b.quadratic();
  CVec v(na + nb);
  v.head(na) = a.linear();
  v.tail(nb) = b.linear();
  std::vector<CoordLabel> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  check_labels(labels);
  return renormalized(A, v, a.log_norm() + b.log_norm(), std::move(labels));
}

MeasurementDensity measurement_density(const GaussianAmplitude& s) {
  const Mat Ar = s.quadratic().real();
  const Vec br = s.linear().real();
  Eigen::LLT<Mat> llt(Ar);
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::not_positive_definite, "measurement_density: Re(A) not PD");
  }
  MeasurementDensity d;
  d.mean = llt.solve(br);
  const Mat inv = llt.solve(Mat::Identity(s.size(), s.size()));
  d.covariance = 0.25 * (inv + inv.transpose());  // (2 Re A)^{-1}, symmetrized
  return d;
}

Vec sample(const MeasurementDensity& d, const Mat& sqrt_covariance,
           CounterRng& rng) {
  Vec z(d.mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  return d.mean + sqrt_covariance * z;
}

Vec sample(const GaussianAmplitude& s, uint64_t seed, uint64_t stream) {
  const MeasurementDensity d = measurement_density(s);
  const Mat root = symmetric_sqrt(d.covariance);
  CounterRng rng(seed, stream, kMeasurementLane);
  return sample(d, root, rng);
}

namespace {

// permutation mapping: out[k] = index in `from` of the coordinate that sits
// at position k of `to`
std::vector<int> match_labels(const std::vector<CoordLabel>& to,
                              const std::vector<CoordLabel>& from) {
  if (to.size() != from.size()) {
    fail(ErrorCode::label_mismatch, "overlap: coordinate count differs");
  }
  std::vector<int> perm(to.size(), -1);
  for (size_t k = 0; k < to.size(); ++k) {
    for (size_t j = 0; j < from.size(); ++j) {
      if (same_coord(to[k], from[j])) {
        perm[k] = static_cast<int>(j);
        break;
      }
    }
    if (perm[k] < 0) {
      fail(ErrorCode::label_mismatch, "overlap: coordinate sets differ");
    }
  }
  return perm;
}

}  // namespace

Cplx overlap(const GaussianAmplitude& s1, const GaussianAmplitude& s2) {
  const std::vector<int> perm = match_labels(s1.labels(), s2.labels());
  const int n = s1.size();

  // reorder s2 into s1's coordinate order
  CMat A2(n, n);
  CVec b2(n);
  std::vector<CoordLabel> labels2(n);
  for (int i = 0; i < n; ++i) {
    b2(i) = s2.linear()(perm[i]);
    labels2[i] = s2.labels()[perm[i]];
    for (int j = 0; j < n; ++j) A2(i, j) = s2.quadratic()(perm[i], perm[j]);
  }
  GaussianAmplitude t2 = renormalized(A2, b2, s2.log_norm(), labels2);
  for (int i = 0; i < n; ++i) {
    t2 = to_rep(t2, s1.labels()[i], s1.labels()[i].rep);
  }

  const CMat M = s1.quadratic().conjugate() + t2.quadratic();
  const CVec v = s1.linear().conjugate() + t2.linear();
  const Cplx log_ov = std::conj(s1.log_norm()) + t2.log_norm() +
                      gaussian_integral_log(M, v);
  return std::exp(log_ov);
}

double cross_coupling(const GaussianAmplitude& s,
                      const std::vector<CoordLabel>& block1,
                      const std::vector<CoordLabel>& block2) {
  const int n = s.size();
  std::vector<int> side(n, 0);
  for (const CoordLabel& l : block1) side[s.index_of(l)] += 1;
  for (const CoordLabel& l : block2) side[s.index_of(l)] += 2;
  for (int i = 0; i < n; ++i) {
    if (side[i] != 1 && side[i] != 2) {
      fail(ErrorCode::bad_partition,
           "cross_coupling: blocks must cover all coordinates disjointly");
    }
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (side[i] == 1 && side[j] == 2) {
        worst = std::max(worst, std::abs(s.quadratic()(i, j)));
      }
    }
  }
  return worst;
}

double norm_error(const GaussianAmplitude& s) {
  const CMat M = s.quadratic().conjugate() + s.quadratic();
  const CVec v = s.linear().conjugate() + s.linear();
  const Cplx log_sq =
      std::conj(s.log_norm()) + s.log_norm() + gaussian_integral_log(M, v);
  return std::abs(std::exp(log_sq) - 1.0);
}

double max_param_difference(const GaussianAmplitude& a,
                            const GaussianAmplitude& b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::label_mismatch, "max_param_difference: size mismatch");
  }
  for (int i = 0; i < a.size(); ++i) {
    if (!same_coord(a.labels()[i], b.labels()[i]) ||
        a.labels()[i].rep != b.labels()[i].rep) {
      fail(ErrorCode::label_mismatch, "max_param_difference: label mismatch");
    }
  }
  const double da = (a.quadratic() - b.quadratic()).cwiseAbs().maxCoeff();
  const double db = (a.linear() - b.linear()).cwiseAbs().maxCoeff();
  return std::max(da, db);
}

bool equal_up_to_phase(const GaussianAmplitude& a, const GaussianAmplitude& b,
                       double tol) {
  if (max_param_difference(a, b) > tol) return false;
  return std::abs(std::abs(std::exp(a.log_norm() - b.log_norm())) - 1.0) <=
         1e-10;
}

double phase_offset(const GaussianAmplitude& a, const GaussianAmplitude& b) {
  return std::arg(std::exp(a.log_norm() - b.log_norm()));
}

}  // namespace qel
