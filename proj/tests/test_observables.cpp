#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "sovsg/observables.hpp"
#include "sovsg/pipeline.hpp"
#include "sovsg/yang_baxter.hpp"

using namespace sovsg;

namespace {

double max_rel(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("F tables") {
  const ModelParams m = test::complex_params(3, 3, 2);
  Pipeline pipe(m, 1);
  const auto& q = pipe.spectrum().pairs[0].q;
  const auto& qp = pipe.spectrum().pairs[1].q;
  const FTable id = ff_coefficients(OperatorTag::kIdentity, m, pipe.grids(), pipe.coeffs(), q, qp);
  REQUIRE(id.size() == 3);
  for (const Matrix& t : id) CHECK((t.array() - Complex(1.0, 0.0)).abs().maxCoeff() == 0.0);
  const FTable u1 = ff_coefficients(OperatorTag::kU1, m, pipe.grids(), pipe.coeffs(), q, qp);
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 3; ++a)
      for (int k = 0; k < 3; ++k) CHECK(std::abs(u1[b](a, k) - pipe.grids().y(a, k)) < 1e-14);
}

TEST_CASE("eigenstates and co-eigenstates") {
  const ModelParams m = test::complex_params(3, 3, 2);
  Pipeline pipe(m, 8);
  const auto& pairs = pipe.spectrum().pairs;
  const GlobalOperator t = transfer(m, {0.6, 0.45});
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const Complex ev = eval_transfer(pairs[j].t_coeffs, {0.6, 0.45});
    const Vector& w = pipe.states()[j];
    const RowVector& c = pipe.costates()[j];
    CHECK((t * w - ev * w).norm() < 1e-9 * t.norm() * w.norm());
    CHECK((c * t - ev * c).norm() < 1e-9 * t.norm() * c.norm());
  }
}

// det Phi against <t'| O |t> with dense operators, for both couplings kinds.
TEST_CASE("form factors match direct matrix elements") {
  for (const ModelParams& m : {test::real_params(3, 3, 2), test::complex_params(3, 3, 2),
                               test::complex_params(1, 5, 2)}) {
    Pipeline pipe(m, 13);
    const auto& pairs = pipe.spectrum().pairs;
    const auto n = pairs.size();
    const GlobalOperator u1 = embed(shift_u(m), 1, m);
    const GlobalOperator one = GlobalOperator::Identity(m.dim(), m.dim());
    Matrix det_id(n, n), dir_id(n, n), det_u(n, n), dir_u(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto& qt = pairs[j].q;
        const auto& qtp = pairs[k].q;
        det_id(k, j) = form_factor(OperatorTag::kIdentity, m, pipe.grids(), pipe.coeffs(), qt, qtp).det;
        det_u(k, j) = form_factor(OperatorTag::kU1, m, pipe.grids(), pipe.coeffs(), qt, qtp).det;
        dir_id(k, j) = direct_matrix_element(pipe.costates()[k], one, pipe.states()[j]);
        dir_u(k, j) = direct_matrix_element(pipe.costates()[k], u1, pipe.states()[j]);
      }
    CHECK(max_rel(det_id, dir_id) < 1e-8);
    CHECK(max_rel(det_u, dir_u) < 1e-7);
  }
}

TEST_CASE("form factor determinant is multilinear in the F rows") {
  const ModelParams m = test::real_params(3, 3, 2);
  Pipeline pipe(m, 4);
  const auto& q = pipe.spectrum().pairs[0].q;
  const auto& qp = pipe.spectrum().pairs[2].q;
  const AverageData& avg = pipe.grids();
  FTable f = ff_coefficients(OperatorTag::kU1, m, avg, pipe.coeffs(), q, qp);
  // Row a of Phi is linear in the table rows F_b(a, .) taken over all b.
  FTable g = f, h = f;
  for (std::size_t b = 0; b < f.size(); ++b) {
    g[b].row(0) = f[b].row(0).reverse() * Complex(2.0, -1.0 + 0.3 * b);
    h[b].row(0) = f[b].row(0) + g[b].row(0);
  }
  const Complex df = form_factor(m, avg, f, q, qp).det;
  const Complex dg = form_factor(m, avg, g, q, qp).det;
  const Complex dh = form_factor(m, avg, h, q, qp).det;
  CHECK(std::abs(dh - df - dg) < 1e-10 * (std::abs(df) + std::abs(dg)));
}
