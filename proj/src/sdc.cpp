#include "qelidar/sdc.hpp"

#include <cmath>

#include "qelidar/errors.hpp"

namespace qel {

namespace {

using Vec4 = Eigen::Vector4cd;
using Cx = std::complex<double>;

Gate4 kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Gate4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::Matrix2cd pauli_x2() {
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  return x;
}

Eigen::Matrix2cd pauli_z2() {
  Eigen::Matrix2cd z;
  z << 1, 0, 0, -1;
  return z;
}

void check_bit(int b) {
  if (b != 0 && b != 1) fail(ErrorCode::invalid_params, "bits must be 0 or 1");
}

}  // namespace

Gate4 cnot_ab() {
  Gate4 g = Gate4::Zero();
  g(0, 0) = 1;  // |00> -> |00>
  g(1, 1) = 1;  // |01> -> |01>
  g(2, 3) = 1;  // |11> -> |10>
  g(3, 2) = 1;  // |10> -> |11>
  return g;
}

Gate4 pauli_x_a() { return kron2(pauli_x2(), Eigen::Matrix2cd::Identity()); }
Gate4 pauli_z_a() { return kron2(pauli_z2(), Eigen::Matrix2cd::Identity()); }
Gate4 pauli_x_b() { return kron2(Eigen::Matrix2cd::Identity(), pauli_x2()); }

double gate_unitarity_error(const Gate4& u) {
  return (u.adjoint() * u - Gate4::Identity()).cwiseAbs().maxCoeff();
}

SdcDecodeResult sdc_encode_decode(int b1, int b2) {
  check_bit(b1);
  check_bit(b2);
  // (|0>_A + |1>_A)/sqrt(2) (x) |0>_B
  Vec4 psi;
  psi << Cx(1 / std::sqrt(2.0), 0), 0, Cx(1 / std::sqrt(2.0), 0), 0;

  Vec4 state = cnot_ab() * psi;
  if (b1) state = pauli_x_a() * state;
  if (b2) state = pauli_z_a() * state;
  state = cnot_ab() * state;

  // read A in the +/- basis, B in the computational basis
  const Cx plus0 = (state(0) + state(2)) / std::sqrt(2.0);   // A=+, B=0
  const Cx plus1 = (state(1) + state(3)) / std::sqrt(2.0);   // A=+, B=1
  const Cx minus0 = (state(0) - state(2)) / std::sqrt(2.0);  // A=-, B=0
  const Cx minus1 = (state(1) - state(3)) / std::sqrt(2.0);  // A=-, B=1

  const double p_minus = std::norm(minus0) + std::norm(minus1);
  const double p_b1 = std::norm(plus1) + std::norm(minus1);

  SdcDecodeResult r;
  r.b2 = p_minus > 0.5 ? 1 : 0;
  r.b1 = p_b1 > 0.5 ? 1 : 0;
  const double probs[4] = {std::norm(plus0), std::norm(plus1),
                           std::norm(minus0), std::norm(minus1)};
  for (double p : probs) {
    r.prob_deviation =
        std::max(r.prob_deviation, std::min(p, std::abs(1.0 - p)));
  }
  return r;
}

double sdc_operator_identity(int b1, int b2) {
  check_bit(b1);
  check_bit(b2);
  Gate4 encode = Gate4::Identity();
  if (b1) encode = pauli_x_a() * encode;
  if (b2) encode = pauli_z_a() * encode;
  const Gate4 lhs = cnot_ab() * encode * cnot_ab();
  Gate4 rhs = Gate4::Identity();
  if (b1) rhs = pauli_x_a() * rhs;
  if (b2) rhs = pauli_z_a() * rhs;
  if (b1) rhs = pauli_x_b() * rhs;

  // align global phase on the largest-magnitude entry of the left side
  Eigen::Index r = 0, c = 0;
  lhs.cwiseAbs().maxCoeff(&r, &c);
  const Cx phase = rhs(r, c) / lhs(r, c);
  return (phase * lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace qel
