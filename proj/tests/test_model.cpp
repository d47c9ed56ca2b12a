#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "sovsg/errors.hpp"
#include "sovsg/model.hpp"

using namespace sovsg;

TEST_CASE("q and its square root") {
  const ModelParams m = make_params(1, 3, 2, {1.0}, {1.0});
  const double pi = std::numbers::pi;
  CHECK(std::abs(m.q - std::polar(1.0, -2.0 * pi / 3.0)) < 1e-15);
  CHECK(std::abs(m.q_half - std::polar(1.0, -pi / 3.0)) < 1e-15);
  CHECK(std::abs(m.q_half * m.q_half - m.q) < 1e-15);
  CHECK(m.q_pow(3) == Complex(1.0, 0.0));
  CHECK(std::abs(m.q_pow(-1) - std::conj(m.q)) < 1e-15);
  CHECK(m.beta_sq == doctest::Approx(2.0 / 3.0));
  CHECK(m.dim() == 3);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_params(2, 3, 2, {1.0, 1.0}, {1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(make_params(1, 4, 2, {1.0}, {1.0}), ConfigError);
  CHECK_THROWS_AS(make_params(1, 3, 3, {1.0}, {1.0}), ConfigError);
  CHECK_THROWS_AS(make_params(1, 5, 10, {1.0}, {1.0}), ConfigError);
  CHECK_THROWS_AS(make_params(3, 3, 2, {1.0}, {1.0}), ConfigError);
  CHECK_THROWS_AS(make_params(1, 3, 2, {0.0}, {1.0}), ConfigError);
  Tolerances tol;
  CHECK_THROWS_AS(tol.set("no_such_tolerance", 1.0), ConfigError);
  CHECK_THROWS_AS(tol.set("root", -1.0), ConfigError);
}

TEST_CASE("Weyl pair") {
  const ModelParams m = test::real_params(1, 5, 2);
  const LocalOperator u = shift_u(m), v = clock_v(m);
  CHECK((u * v - m.q * v * u).norm() < 1e-14);
  LocalOperator up = LocalOperator::Identity(5, 5);
  for (int k = 0; k < 5; ++k) up = up * u;
  CHECK((up - LocalOperator::Identity(5, 5)).norm() < 1e-14);
  // u|k> = |k-1>
  CHECK(u(0, 1) == Complex(1.0, 0.0));
  CHECK(u(4, 0) == Complex(1.0, 0.0));
}

TEST_CASE("embedding puts site 1 slowest") {
  const ModelParams m = test::real_params(3, 3, 2);
  const LocalOperator v = clock_v(m);
  const GlobalOperator v1 = embed(v, 1, m), v3 = embed(v, 3, m);
  CHECK(v1.rows() == 27);
  CHECK(std::abs(v1(9, 9) - m.q) < 1e-15);
  CHECK(std::abs(v3(1, 1) - m.q) < 1e-15);
  const GlobalOperator u2 = embed(shift_u(m), 2, m);
  CHECK((v1 * u2 - u2 * v1).norm() < 1e-14);
  CHECK((embed(LocalOperator::Identity(3, 3), 2, m) - GlobalOperator::Identity(27, 27)).norm() == 0.0);
}
