#include <doctest.h>

#include <cmath>

#include "pdtv/field.hpp"
#include "test_helpers.hpp"

using namespace pdtv;
using pdtv::testing::FieldRng;

TEST_CASE("l2_norm: zero field") {
  CHECK(l2_norm(ScalarField(4, 4)) == 0.0);
}

TEST_CASE("l2_norm: 3-4-5") {
  ScalarField f(1, 2);
  f(0, 0) = 3.0;
  f(0, 1) = 4.0;
  CHECK(l2_norm(f) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("l2_norm: matches an independent double-loop sum") {
  FieldRng rng(101);
  const ScalarField f = rng.scalar(8, 8, -5.0, 5.0);
  double sq = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) sq += f(i, j) * f(i, j);
  const double expect = std::sqrt(sq);
  CHECK(std::abs(l2_norm(f) - expect) <= 1e-14 * expect);
}

TEST_CASE("l2_norm: vector field counts every component") {
  VectorField xi(2, 2, 2, 0.5);
  CHECK(l2_norm(xi) == doctest::Approx(std::sqrt(8 * 0.25)).epsilon(1e-15));
}

TEST_CASE("pointwise_euclidean_norms: 3-4-5 cell") {
  VectorField xi(1, 1, 2);
  xi(0, 0, 0) = 3.0;
  xi(0, 0, 1) = 4.0;
  const ScalarField n = pointwise_euclidean_norms(xi);
  CHECK(n(0, 0) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("pointwise_euclidean_norms: d=1 gives absolute values") {
  VectorField xi(1, 3, 1);
  xi(0, 0, 0) = -2.0;
  xi(0, 1, 0) = 0.0;
  xi(0, 2, 0) = 7.5;
  const ScalarField n = pointwise_euclidean_norms(xi);
  CHECK(n(0, 0) == 2.0);
  CHECK(n(0, 1) == 0.0);
  CHECK(n(0, 2) == 7.5);
}

TEST_CASE("pointwise_euclidean_norms: zero field maps to zero field") {
  const ScalarField n = pointwise_euclidean_norms(VectorField(3, 2, 2));
  for (double v : n.values()) CHECK(v == 0.0);
}

TEST_CASE("axpy: a=0 returns y, a=1 with zero y returns x") {
  FieldRng rng(7);
  const ScalarField x = rng.scalar(3, 4);
  const ScalarField y = rng.scalar(3, 4);
  const ScalarField r0 = axpy(0.0, x, y);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) CHECK(r0(i, j) == y(i, j));
  const ScalarField r1 = axpy(1.0, x, ScalarField(3, 4));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) CHECK(r1(i, j) == x(i, j));
}

TEST_CASE("axpy: 2*ones + ones = 3") {
  const ScalarField r = axpy(2.0, ScalarField(2, 2, 1.0), ScalarField(2, 2, 1.0));
  for (double v : r.values()) CHECK(v == 3.0);
}

TEST_CASE("axpy: shape mismatch throws") {
  CHECK_THROWS_AS(axpy(1.0, ScalarField(2, 2), ScalarField(2, 3)), DimensionError);
  CHECK_THROWS_AS(axpy(1.0, VectorField(2, 2, 2), VectorField(2, 2, 1)),
                  DimensionError);
}

TEST_CASE("property: l2_norm(axpy(-1,x,x)) is exactly zero") {
  FieldRng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const ScalarField x = rng.scalar(5, 7, -100.0, 100.0);
    CHECK(l2_norm(axpy(-1.0, x, x)) == 0.0);
  }
}

TEST_CASE("property: l2_norm is absolutely homogeneous") {
  FieldRng rng(29);
  for (double a : {-3.5, -1.0, 0.25, 2.0, 17.0}) {
    const ScalarField x = rng.scalar(6, 6, -2.0, 2.0);
    const double lhs = l2_norm(axpy(a, x, ScalarField(6, 6)));
    const double rhs = std::abs(a) * l2_norm(x);
    CHECK(std::abs(lhs - rhs) <= 2e-15 * rhs);
  }
}

TEST_CASE("fields reject degenerate shapes") {
  CHECK_THROWS_AS(ScalarField(0, 4), DimensionError);
  CHECK_THROWS_AS(VectorField(4, 0, 2), DimensionError);
  CHECK_THROWS_AS(SeedMask(0, 1), DimensionError);
}

TEST_CASE("seed mask starts free and holds tags") {
  SeedMask m(2, 2);
  CHECK_FALSE(m.any_pins());
  m(1, 0) = SeedTag::pin1;
  CHECK(m.any_pins());
  CHECK(m(1, 0) == SeedTag::pin1);
  CHECK(m(0, 0) == SeedTag::free);
}
