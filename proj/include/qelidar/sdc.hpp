#pragma once

// Qubit superdense coding, the discrete counterpart of the continuous
// sum/difference scheme: entangle with a CNOT, encode two bits with Pauli
// operators on one qubit, disentangle with a second CNOT, then two local
// measurements recover both bits deterministically.

#include <Eigen/Dense>

namespace qel {

using Gate4 = Eigen::Matrix4cd;

// basis order |00>, |01>, |10>, |11>; the first label is qubit A
Gate4 cnot_ab();
Gate4 pauli_x_a();
Gate4 pauli_z_a();
Gate4 pauli_x_b();

double gate_unitarity_error(const Gate4& u);

struct SdcDecodeResult {
  int b1 = 0;
  int b2 = 0;
  // largest deviation of any outcome probability from {0, 1}
  double prob_deviation = 0.0;
};

SdcDecodeResult sdc_encode_decode(int b1, int b2);

// max |CNOT (Z^b2 X^b1 x I) CNOT - (Z^b2 X^b1) x X^b1| after global-phase
// alignment on the largest entry
double sdc_operator_identity(int b1, int b2);

}  // namespace qel
