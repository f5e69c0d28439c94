#include <cmath>

#include "doctest.h"
#include "qelidar/errors.hpp"
#include "qelidar/rng.hpp"

using namespace qel;

TEST_CASE("philox4x32-10 known-answer vectors") {
  // reference vectors for the 10-round 4x32 generator
  auto out = philox4x32({0u, 0u, 0u, 0u}, {0u, 0u});
  CHECK(out[0] == 0x6627e8d5u);
  CHECK(out[1] == 0xe169c58du);
  CHECK(out[2] == 0xbc57ac4cu);
  CHECK(out[3] == 0x9b00dbd8u);

  out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                   {0xffffffffu, 0xffffffffu});
  CHECK(out[0] == 0x408f276du);
  CHECK(out[1] == 0x41c83b0eu);
  CHECK(out[2] == 0xa20bc7c6u);
  CHECK(out[3] == 0x6d5451fdu);

  out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                   {0xa4093822u, 0x299f31d0u});
  CHECK(out[0] == 0xd16cfe09u);
  CHECK(out[1] == 0x94fdccebu);
  CHECK(out[2] == 0x5001e420u);
  CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("streams are deterministic and distinct") {
  CounterRng a(7, 11), b(7, 11), c(7, 12), d(8, 11);
  bool all_equal = true;
  bool c_differs = false, d_differs = false;
  for (int i = 0; i < 100; ++i) {
    const double ua = a.uniform();
    all_equal = all_equal && ua == b.uniform();
    c_differs = c_differs || ua != c.uniform();
    d_differs = d_differs || ua != d.uniform();
  }
  CHECK(all_equal);
  CHECK(c_differs);
  CHECK(d_differs);
}

TEST_CASE("lanes of one stream are distinct") {
  CounterRng meas(3, 5, kMeasurementLane);
  CounterRng surv(3, 5, kSurvivalLane);
  bool differs = false;
  for (int i = 0; i < 32; ++i) differs = differs || meas.uniform() != surv.uniform();
  CHECK(differs);
}

TEST_CASE("uniform range and mean") {
  CounterRng rng(1, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
    sum += u;
  }
  // 4 sigma of the uniform mean
  CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("normal sample mean within 4 / sqrt(n) for n = 1e6") {
  CounterRng rng(123, 0);
  const int n = 1000000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("bernoulli edge probabilities") {
  CounterRng rng(5, 0);
  for (int i = 0; i < 20; ++i) {
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
  CHECK_THROWS_AS(rng.bernoulli(1.5), QelError);
}
