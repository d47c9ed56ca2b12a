#include "doctest.h"
#include "helpers.hpp"
#include "sovsg/yang_baxter.hpp"

using namespace sovsg;

TEST_CASE("Lax entries at unit couplings") {
  const ModelParams m = make_params(1, 3, 2, {1.0}, {1.0});
  const LaxMatrix l = lax(m, 1, 1.0);
  for (int k = 0; k < 3; ++k) {
    const Complex qk = m.q_pow(k);
    CHECK(std::abs(l.b(k, k) - (qk - 1.0 / qk) / kI) < 1e-14);
    CHECK(std::abs(l.c(k, k) - (1.0 / qk - qk) / kI) < 1e-14);
  }
  // quantum determinant direction: a and d are off-diagonal shifts
  CHECK(std::abs(l.a(0, 0)) < 1e-15);
  CHECK(std::abs(l.a(0, 1)) > 0.1);
}

TEST_CASE("one site monodromy is the Lax matrix") {
  const ModelParams m = test::complex_params(1, 5, 2);
  const Complex lam{0.7, 0.4};
  const LaxMatrix l = lax(m, 1, lam);
  const MonodromyMatrix t = monodromy(m, lam);
  CHECK((t.A - l.a).norm() < 1e-14);
  CHECK((t.B - l.b).norm() < 1e-14);
  CHECK((t.C - l.c).norm() < 1e-14);
  CHECK((t.D - l.d).norm() < 1e-14);
  CHECK((transfer(m, lam) - l.a - l.d).norm() < 1e-14);
}

TEST_CASE("RLL holds with anisotropy q, not q^(1/2)") {
  const ModelParams m = test::complex_params(3, 5, 4);
  const Complex lam{0.9, 0.3}, mu{-0.4, 1.1};
  for (int site = 1; site <= 3; ++site) {
    CHECK(verify_rll(m, site, lam, mu).residual < 1e-12);
    CHECK(verify_rll(m, site, lam, mu, RConvention::kHalfAnisotropy).residual > 1e-3);
  }
}

TEST_CASE("R-matrix entries") {
  const Complex x{1.3, 0.2}, s{0.5, 0.8};
  const Eigen::Matrix4cd r = r_matrix(x, s);
  CHECK(std::abs(r(0, 0) - (x * s - 1.0 / (x * s))) < 1e-15);
  CHECK(std::abs(r(3, 3) - (x * s - 1.0 / (x * s))) < 1e-15);
  CHECK(std::abs(r(1, 1) - (x - 1.0 / x)) < 1e-15);
  CHECK(std::abs(r(1, 2) - (s - 1.0 / s)) < 1e-15);
}

TEST_CASE("transfer matrices commute") {
  const ModelParams m = test::real_params(3, 3, 2);
  const GlobalOperator t1 = transfer(m, {0.8, 0.1}), t2 = transfer(m, {-0.3, 1.4});
  CHECK((t1 * t2 - t2 * t1).norm() < 1e-12 * t1.norm() * t2.norm());
  const GlobalOperator b1 = monodromy(m, {0.8, 0.1}).B, b2 = monodromy(m, {1.2, -0.5}).B;
  CHECK((b1 * b2 - b2 * b1).norm() < 1e-12 * b1.norm() * b2.norm());
}
