#pragma once

// Exact algebra of multivariate Gaussian pure-state amplitudes over labeled
// time/frequency coordinates:
//
//   psi(x) = exp(-x^T A x / 2 + b^T x + c)
//
// with A complex symmetric (Re A positive definite), b complex, and c fixed
// by normalization up to the global phase Im(c). All quantities are
// dimensionless: times in a base unit u, angular frequencies in rad/u.
//
// Conventions (fixed project-wide):
//   * time -> frequency transform:  Psi(w) = integral dt e^{+i w t} psi(t) / sqrt(2 pi)
//     and the inverse uses e^{-i w t}.
//   * time_shift(tau):  psi(t) -> psi(t - tau); in the frequency
//     representation this multiplies by e^{+i w tau}.
//   * freq_shift(mu):   Psi(w) -> Psi(w - mu); in the time representation
//     this multiplies by e^{-i mu t}.
//
// States are immutable; every operation returns a new value, so sharing
// across threads is safe.

#include <cstdint>
#include <vector>

#include "qelidar/errors.hpp"
#include "qelidar/linalg.hpp"
#include "qelidar/rng.hpp"

namespace qel {

enum class Role { signal, idler };
enum class Rep { time, frequency };

struct CoordLabel {
  int photon_id = 0;
  Role role = Role::signal;
  Rep rep = Rep::time;
};

// Coordinate identity is (photon_id, role); rep tags the current
// representation and is ignored when looking a coordinate up.
inline bool same_coord(const CoordLabel& a, const CoordLabel& b) {
  return a.photon_id == b.photon_id && a.role == b.role;
}

struct MeasurementDensity {
  Vec mean;
  Mat covariance;
};

class GaussianAmplitude {
 public:
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<CoordLabel>& labels() const { return labels_; }
  const CMat& quadratic() const { return A_; }
  const CVec& linear() const { return b_; }
  Cplx log_norm() const { return c_; }
  // condition number of Re(A); reported, never capped
  double condition_number() const { return condition_; }

  int index_of(const CoordLabel& coord) const;  // throws CoordNotFound

 private:
  GaussianAmplitude() = default;
  friend GaussianAmplitude make_state(const CMat&, const CVec&,
                                      std::vector<CoordLabel>);
  friend GaussianAmplitude renormalized(const CMat&, const CVec&, Cplx,
                                        std::vector<CoordLabel>);

  std::vector<CoordLabel> labels_;
  CMat A_;
  CVec b_;
  Cplx c_{0.0, 0.0};
  double condition_ = 1.0;
};

// Validates symmetry (1e-12), positive-definite Re(A) and label uniqueness,
// then normalizes with Im(c) = 0.
GaussianAmplitude make_state(const CMat& A, const CVec& b,
                             std::vector<CoordLabel> labels);

// Internal constructor used by the operations: symmetrizes A, recomputes
// Re(c) from normalization and keeps the supplied Im(c) as the global phase.
GaussianAmplitude renormalized(const CMat& A, const CVec& b, Cplx c,
                               std::vector<CoordLabel> labels);

// One-coordinate Fourier transform; flips that coordinate's rep tag.
GaussianAmplitude fourier(const GaussianAmplitude& s, const CoordLabel& coord);
// fourier() only when the coordinate is not already in `target`
GaussianAmplitude to_rep(const GaussianAmplitude& s, const CoordLabel& coord,
                         Rep target);

GaussianAmplitude time_shift(const GaussianAmplitude& s,
                             const CoordLabel& coord, double tau);
GaussianAmplitude freq_shift(const GaussianAmplitude& s,
                             const CoordLabel& coord, double mu);

// Unimodular point transformation x -> L x (|det L| = 1):
//   psi'(x) = psi(L^{-1} x).
// Coordinates moved by L must share one representation.
GaussianAmplitude linear_map(const GaussianAmplitude& s, const Mat& L);

GaussianAmplitude tensor(const GaussianAmplitude& a, const GaussianAmplitude& b);

// Born-rule density of the joint coordinate measurement in the current reps.
MeasurementDensity measurement_density(const GaussianAmplitude& s);

// Deterministic sampling: identical (seed, stream) give identical outcomes
// regardless of evaluation order. Uses the symmetric square root of the
// covariance, which is canonical for a given density.
Vec sample(const GaussianAmplitude& s, uint64_t seed, uint64_t stream);
Vec sample(const MeasurementDensity& d, const Mat& sqrt_covariance,
           CounterRng& rng);

// <s1|s2>. Labels must agree as a set; coordinates of s2 whose rep differs
// from s1's are Fourier-transformed first.
Cplx overlap(const GaussianAmplitude& s1, const GaussianAmplitude& s2);

// max |A_ij| between the two blocks; zero iff the state factorizes.
double cross_coupling(const GaussianAmplitude& s,
                      const std::vector<CoordLabel>& block1,
                      const std::vector<CoordLabel>& block2);

// |integral |psi|^2 dx - 1|
double norm_error(const GaussianAmplitude& s);

// max entrywise deviation over (A, b); labels must match exactly.
double max_param_difference(const GaussianAmplitude& a,
                            const GaussianAmplitude& b);
// equality up to a global phase: (A, b) within tol and |e^{c1 - c2}| = 1
bool equal_up_to_phase(const GaussianAmplitude& a, const GaussianAmplitude& b,
                       double tol);
// phase of e^{c_a - c_b}, in (-pi, pi]
double phase_offset(const GaussianAmplitude& a, const GaussianAmplitude& b);

}  // namespace qel
