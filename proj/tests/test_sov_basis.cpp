#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "sovsg/pipeline.hpp"
#include "sovsg/sov_basis.hpp"
#include "sovsg/yang_baxter.hpp"

using namespace sovsg;

TEST_CASE("mixed-radix labels") {
  CHECK(label_index({1, 0, 2}, 3) == 11);
  CHECK(index_label(11, 3, 3) == Label{1, 0, 2});
  for (Eigen::Index i = 0; i < 125; ++i) CHECK(label_index(index_label(i, 3, 5), 5) == i);
}

TEST_CASE("Vandermonde factor") {
  const ModelParams m = test::real_params(3, 3, 2);
  const AverageData avg = compute_grids(m);
  const Label h{2, 0, 1};
  Complex want{1.0, 0.0};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < a; ++b) {
      const Complex ya = avg.y(a, h[a]), yb = avg.y(b, h[b]);
      want *= ya / yb - yb / ya;
    }
  CHECK(std::abs(vandermonde_factor(avg, h) - want) < 1e-13 * std::abs(want));
  const AverageData one = compute_grids(test::real_params(1, 3, 2));
  CHECK(vandermonde_factor(one, {2}) == Complex(1.0, 0.0));
}

TEST_CASE("B-eigenbasis is labelled by the grids") {
  for (const ModelParams& m : {test::real_params(3, 3, 2), test::complex_params(3, 5, 4)}) {
    Pipeline pipe(m, 21);
    const SOVFrame& f = pipe.labelled_frame();
    CHECK(f.labeled);
    CHECK(f.normalized);
    CHECK(f.right.cols() == m.dim());
    CHECK(f.label_residual < 1e-10);
    CHECK(f.label_margin > 1e-4);
    CHECK(f.biorthogonality < 1e-9);
    CHECK(f.measure_residual < 1e-9);
    for (std::size_t i = 0; i < f.labels.size(); ++i)
      CHECK(label_index(f.labels[i], m.p) == static_cast<Eigen::Index>(i));
    // Columns diagonalize B at a fresh point with eigenvalue given by the label.
    std::mt19937_64 rng(4);
    const auto pts = sample_off_grid(rng, 2, pipe.grids());
    CHECK(frame_simultaneity(f, m, pts) < 1e-10);
  }
}

TEST_CASE("calibrated frame reproduces the reference eigenvector") {
  const ModelParams m = test::real_params(3, 3, 2);
  Pipeline pipe(m, 2);
  const SOVFrame& f = pipe.frame();
  CHECK(f.calibrated);
  CHECK(f.scales.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
  const auto& pr = pipe.spectrum().pairs[static_cast<std::size_t>(pipe.reference())];
  const Vector& w = pipe.states()[static_cast<std::size_t>(pipe.reference())];
  const Complex overlap = pr.vector.dot(w) / w.norm();
  CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("transfer acts on the SOV basis by one-step shifts") {
  for (const ModelParams& m : {test::real_params(1, 5, 2), test::complex_params(3, 3, 2)}) {
    Pipeline pipe(m, 6);
    const SOVFrame& f = pipe.frame();
    CHECK(f.transfer_pattern < 1e-10);
    CHECK(f.transfer_closure < 1e-10);
    // <y^h| T(y_a^{h_a}) = a <y^{h-e_a}| + d <y^{h+e_a}| for the calibrated left basis
    const AverageData& avg = pipe.grids();
    const Label h = index_label(m.dim() - 1, avg.n_vars(), m.p);
    const Complex y = avg.y(0, h[0]);
    Label lo = h, hi = h;
    lo[0] = (h[0] + m.p - 1) % m.p;
    hi[0] = (h[0] + 1) % m.p;
    const RowVector want = pipe.coeffs().a(y) * f.left.row(label_index(lo, m.p)) +
                           pipe.coeffs().d(y) * f.left.row(label_index(hi, m.p));
    const RowVector got = f.left.row(m.dim() - 1) * transfer(m, y);
    CHECK((got - want).norm() < 1e-10 * want.norm());
  }
}

TEST_CASE("reference calibration agrees with the transfer calibration") {
  const ModelParams m = test::real_params(3, 3, 2);
  Pipeline pipe(m, 2);
  const Vector ratio = pipe.reference_frame().scales.cwiseQuotient(pipe.frame().scales);
  CHECK((ratio.array() - ratio(0)).abs().maxCoeff() < 1e-7 * std::abs(ratio(0)));
}
