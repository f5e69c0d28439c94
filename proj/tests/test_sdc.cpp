#include <cmath>

#include "doctest.h"
#include "qelidar/errors.hpp"
#include "qelidar/sdc.hpp"

using namespace qel;

TEST_CASE("constructed gates are unitary") {
  CHECK(gate_unitarity_error(cnot_ab()) < 1e-12);
  CHECK(gate_unitarity_error(pauli_x_a()) < 1e-12);
  CHECK(gate_unitarity_error(pauli_z_a()) < 1e-12);
  CHECK(gate_unitarity_error(pauli_x_b()) < 1e-12);
}

TEST_CASE("identity encoding decodes to (0, 0)") {
  const SdcDecodeResult r = sdc_encode_decode(0, 0);
  CHECK(r.b1 == 0);
  CHECK(r.b2 == 0);
  CHECK(r.prob_deviation < 1e-12);
}

TEST_CASE("all four bit pairs decode deterministically") {
  for (int b1 = 0; b1 < 2; ++b1) {
    for (int b2 = 0; b2 < 2; ++b2) {
      const SdcDecodeResult r = sdc_encode_decode(b1, b2);
      CHECK(r.b1 == b1);
      CHECK(r.b2 == b2);
      CHECK(r.prob_deviation < 1e-12);
    }
  }
}

TEST_CASE("conjugation identity holds for all four encodings") {
  for (int b1 = 0; b1 < 2; ++b1) {
    for (int b2 = 0; b2 < 2; ++b2) {
      CHECK(sdc_operator_identity(b1, b2) < 1e-12);
    }
  }
}

TEST_CASE("(1, 0) encoding conjugates to X (x) X") {
  const Gate4 lhs = cnot_ab() * pauli_x_a() * cnot_ab();
  const Gate4 xx = pauli_x_a() * pauli_x_b();
  CHECK((lhs - xx).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("bit validation") {
  CHECK_THROWS_AS(sdc_encode_decode(2, 0), QelError);
  CHECK_THROWS_AS(sdc_operator_identity(0, -1), QelError);
}
