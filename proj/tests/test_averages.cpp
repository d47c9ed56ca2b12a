#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "sovsg/averages.hpp"
#include "sovsg/errors.hpp"
#include "sovsg/yang_baxter.hpp"

using namespace sovsg;

namespace {

OperatorFamily entry(const ModelParams& m, char which) {
  return [&m, which](Complex lam) {
    const MonodromyMatrix t = monodromy(m, lam);
    switch (which) {
      case 'A': return t.A;
      case 'B': return t.B;
      case 'C': return t.C;
      default: return t.D;
    }
  };
}

double scalar_defect(const GlobalOperator& op) {
  const Complex s = identity_scalar(op);
  return (op - s * GlobalOperator::Identity(op.rows(), op.cols())).norm() / op.norm();
}

}  // namespace

TEST_CASE("averages are central and match the closed form") {
  for (const ModelParams& m : {test::real_params(1, 3, 2), test::complex_params(3, 3, 2)}) {
    const Complex Lambda{0.6, -0.9};
    const CentralAverages ca = averages_closed_form(m, Lambda);
    for (char w : {'A', 'B', 'C', 'D'}) {
      const GlobalOperator avg = average_operator(entry(m, w), Lambda, m);
      CHECK(scalar_defect(avg) < 1e-12);
      const Complex want = (w == 'A' || w == 'D') ? ca.cal_a : ca.cal_b;
      CHECK(std::abs(identity_scalar(avg) - want) < 1e-11 * std::abs(want));
    }
  }
}

TEST_CASE("average does not depend on the p-th root chosen") {
  const ModelParams m = test::complex_params(3, 5, 2);
  const Complex lam{0.8, 0.3};
  const GlobalOperator a0 = average_operator_at_root(entry(m, 'B'), lam, m);
  const GlobalOperator a1 = average_operator_at_root(entry(m, 'B'), lam * m.q_pow(2), m);
  CHECK((a0 - a1).norm() < 1e-11 * a0.norm());
}

TEST_CASE("cal_b is odd and Lambda^N cal_b is even") {
  const ModelParams m = test::complex_params(3, 3, 2);
  const Complex L{0.4, 1.7};
  CHECK(std::abs(averages_closed_form(m, -L).cal_b + averages_closed_form(m, L).cal_b) < 1e-12);
  const Vector c = cal_b_polynomial(m);
  CHECK(c.size() == 7);
  for (int k = 1; k < 7; k += 2) CHECK(std::abs(c(k)) == 0.0);
}

TEST_CASE("one site: Z^2 = xi^(2p)") {
  const ModelParams m = make_params(1, 3, 2, {0.9}, {1.4});
  const AverageData avg = compute_grids(m);
  REQUIRE(avg.n_vars() == 1);
  CHECK(std::abs(avg.Z[0] * avg.Z[0] - std::pow(1.4, 6)) < 1e-12);
  CHECK(std::abs(std::pow(avg.y0[0], 3) - avg.Z[0]) < 1e-12);
  CHECK(std::abs(avg.zero_product_sign) == 1.0);
}

TEST_CASE("grids are closed under q and zeros are roots") {
  const ModelParams m = test::complex_params(3, 5, 4);
  const AverageData avg = compute_grids(m);
  REQUIRE(avg.n_vars() == 3);
  CHECK(avg.max_zero_residual < 1e-10);
  CHECK(avg.min_separation > 1e-6);
  for (int n = 0; n < 3; ++n) {
    CHECK(std::abs(avg.y(n, 5) - avg.y(n, 0)) < 1e-14);
    CHECK(std::abs(avg.y(n, 1) - avg.y0[n] * m.q) < 1e-14);
    CHECK(std::arg(avg.Z[n]) >= 0.0);
    CHECK(std::arg(avg.Z[n]) < 3.1416);
  }
  Complex ratio{1.0, 0.0};
  for (int n = 0; n < 3; ++n) ratio *= avg.Z[n] / std::pow(m.xi[n], 5);
  CHECK(std::abs(ratio - avg.zero_product_sign) < 1e-10);
}

// Identical couplings still give distinct zeros; near-collisions are flagged
// through the collision and genericity thresholds.
TEST_CASE("close zeros are degenerate") {
  const ModelParams m = make_params(3, 3, 2, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
  CHECK_NOTHROW(compute_grids(m));
  Tolerances loose;
  loose.set("collision", 10.0);
  CHECK_THROWS_AS(compute_grids(make_params(3, 3, 2, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, loose)), DegenerateError);
  Tolerances wide;
  wide.set("genericity", 10.0);
  CHECK_THROWS_AS(compute_grids(make_params(3, 3, 2, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, wide)), DegenerateError);
}
