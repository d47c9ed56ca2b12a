#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "sovsg/pipeline.hpp"
#include "sovsg/spectrum.hpp"

using namespace sovsg;

TEST_CASE("Baxter coefficients") {
  const ModelParams m = test::complex_params(3, 3, 2);
  const BaxterCoeffs c(m);
  for (int r = 0; r < 3; ++r) {
    const Complex z1 = kI * m.q_half * m.xi[r] / m.kappa[r];
    const Complex z2 = kI * m.q_half * m.kappa[r] * m.xi[r];
    CHECK(std::abs(c.a(z1)) < 1e-13);
    CHECK(std::abs(c.a(z2)) < 1e-13);
  }
  const Complex lam{0.3, 0.9};
  CHECK(std::abs(c.d(lam) - std::pow(m.q, 3) * c.a(-lam * m.q)) < 1e-13);
}

TEST_CASE("transfer exponents") {
  CHECK(transfer_exponents(1) == std::vector<int>{0});
  CHECK(transfer_exponents(3) == std::vector<int>{-2, 0, 2});
  Vector t(3);
  t << 1.0, 2.0, 3.0;
  CHECK(std::abs(eval_transfer(t, 2.0) - (0.25 + 2.0 + 12.0)) < 1e-14);
}

TEST_CASE("spectrum and Q-functions") {
  for (const ModelParams& m : {test::real_params(1, 3, 2), test::real_params(3, 3, 2),
                               test::complex_params(3, 5, 2)}) {
    Pipeline pipe(m, 11);
    const OracleSpectrum& s = pipe.spectrum();
    const auto dim = static_cast<std::size_t>(m.dim());
    REQUIRE(s.pairs.size() == dim);
    CHECK(s.max_eig_residual < 1e-9);
    CHECK(s.min_gap > 1e-6);
    const BaxterCoeffs& c = pipe.coeffs();
    for (const auto& pr : s.pairs) {
      CHECK(pr.q.degree_bound() == m.n_sites * (m.p - 1));
      CHECK(tq_residual(m, c, pr.t_coeffs, pr.q, {0.37, -1.21}) < 1e-9);
      CHECK(pr.q.coeffs.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
      const Matrix d = separate_system(m, pipe.grids(), c, pr.t_coeffs, 0);
      CHECK(d.rows() == m.p);
      CHECK(std::abs(d.determinant()) < 1e-9 * std::pow(d.norm(), m.p));
    }
  }
}

TEST_CASE("Q has no components above its degree bound") {
  const ModelParams m = test::real_params(3, 3, 2);
  Pipeline pipe(m, 5);
  const auto& pr = pipe.spectrum().pairs.front();
  double uniq = 0.0;
  CHECK(q_degree_excess(m, pipe.grids(), pipe.coeffs(), pr.t_coeffs, 3, 2, &uniq) < 1e-8);
  CHECK(uniq > 1e-12);
}

TEST_CASE("ab-initio roots are transfer eigenvalues") {
  const ModelParams m = test::real_params(1, 3, 2);
  Pipeline pipe(m, 3);
  const AbInitioResult r = ab_initio_spectrum(m, pipe.grids(), pipe.coeffs(), 9, 12);
  CHECK(!r.solutions.empty());
  for (const Vector& t : r.solutions) {
    double best = 1e300;
    for (const auto& pr : pipe.oracle().pairs) best = std::min(best, (pr.t_coeffs - t).norm());
    CHECK(best < 1e-7 * (1.0 + t.norm()));
  }
}
