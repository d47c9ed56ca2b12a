#include "sovsg/yang_baxter.hpp"

#include <array>
#include <cmath>

#include "sovsg/errors.hpp"
#include "sovsg/linalg.hpp"

namespace sovsg {

namespace {

void require_nonzero(Complex lambda) {
  if (lambda == Complex{}) throw ConfigError("spectral parameter lambda must be nonzero");
}

}  // namespace

LaxMatrix lax(const ModelParams& params, int site, Complex lambda) {
  require_nonzero(lambda);
  if (site < 1 || site > params.n_sites) throw ConfigError("lax: site index out of range");

  const auto n = static_cast<std::size_t>(site - 1);
  const Complex k = params.kappa[n];
  const Complex ln = lambda / params.xi[n];
  const Complex qh = params.q_half;
  const LocalOperator v = clock_v(params);
  const LocalOperator v_inv = v.adjoint();
  const LocalOperator u = shift_u(params);
  const LocalOperator u_inv = u.adjoint();

  LaxMatrix out;
  out.site = site;
  out.lambda = lambda;
  // u is placed to the left of the v-dependent factor, as written.
  out.a = k * (u * (v * (k / qh) + v_inv * (qh / k)));
  out.b = k * (ln * v - v_inv / ln) / kI;
  out.c = k * (ln * v_inv - v / ln) / kI;
  out.d = k * (u_inv * (v * (qh / k) + v_inv * (k / qh)));
  return out;
}

MonodromyMatrix monodromy(const ModelParams& params, Complex lambda) {
  require_nonzero(lambda);
  // Grow the product one site at a time; site n enters as the fastest tensor
  // factor, which reproduces the lexicographic basis with site 1 slowest.
  const LaxMatrix l1 = lax(params, 1, lambda);
  std::array<Matrix, 4> m{l1.a, l1.b, l1.c, l1.d};
  for (int site = 2; site <= params.n_sites; ++site) {
    const LaxMatrix l = lax(params, site, lambda);
    const std::array<Matrix, 4> next{
        kron(m[0], l.a) + kron(m[2], l.b),  // A' = L11 A + L12 C
        kron(m[1], l.a) + kron(m[3], l.b),  // B' = L11 B + L12 D
        kron(m[0], l.c) + kron(m[2], l.d),  // C' = L21 A + L22 C
        kron(m[1], l.c) + kron(m[3], l.d),  // D' = L21 B + L22 D
    };
    m = next;
  }
  return MonodromyMatrix{lambda, std::move(m[0]), std::move(m[1]), std::move(m[2]), std::move(m[3])};
}

GlobalOperator transfer(const ModelParams& params, Complex lambda) {
  MonodromyMatrix m = monodromy(params, lambda);
  return m.A + m.D;
}

Eigen::Matrix4cd r_matrix(Complex ratio, Complex anisotropy) {
  if (ratio == Complex{}) throw ConfigError("r_matrix: ratio must be nonzero");
  const Complex a = ratio * anisotropy - 1.0 / (ratio * anisotropy);
  const Complex b = ratio - 1.0 / ratio;
  const Complex c = anisotropy - 1.0 / anisotropy;
  Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
  r(0, 0) = a;
  r(1, 1) = b;
  r(1, 2) = c;
  r(2, 1) = c;
  r(2, 2) = b;
  r(3, 3) = a;
  return r;
}

Eigen::Matrix4cd r_matrix(const ModelParams& params, Complex ratio, RConvention convention) {
  return r_matrix(ratio, convention == RConvention::kFullAnisotropy ? params.q : params.q_half);
}

RllCheck verify_rll(const ModelParams& params, int site, Complex lambda, Complex mu,
                    RConvention convention) {
  require_nonzero(lambda);
  require_nonzero(mu);
  const LaxMatrix la = lax(params, site, lambda);
  const LaxMatrix lb = lax(params, site, mu);
  const int p = params.p;

  // Space ordering: aux 0 (slowest), aux 0', site.
  auto unit = [](int i, int j) {
    Eigen::Matrix2cd e = Eigen::Matrix2cd::Zero();
    e(i, j) = 1.0;
    return e;
  };
  const std::array<const LocalOperator*, 4> ea{&la.a, &la.b, &la.c, &la.d};
  const std::array<const LocalOperator*, 4> eb{&lb.a, &lb.b, &lb.c, &lb.d};
  const Matrix id2 = Matrix::Identity(2, 2);
  Matrix l0 = Matrix::Zero(4 * p, 4 * p);
  Matrix l0p = Matrix::Zero(4 * p, 4 * p);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Matrix e = unit(i, j);
      l0 += kron(kron(e, id2), *ea[2 * i + j]);
      l0p += kron(kron(id2, e), *eb[2 * i + j]);
    }
  }
  const Eigen::Matrix4cd r4 = r_matrix(params, lambda / mu, convention);
  const Matrix r = kron(Matrix(r4), Matrix::Identity(p, p));

  const Matrix lhs = r * l0 * l0p;
  const Matrix rhs = l0p * l0 * r;

  RllCheck out;
  const double rn = r4.norm();
  out.r_det = std::abs(r4.determinant()) / (rn * rn * rn * rn);
  out.singular = out.r_det < 1e-14;
  const double scale = lhs.norm();
  out.residual = scale == 0.0 ? (lhs - rhs).norm() : (lhs - rhs).norm() / scale;
  return out;
}

}  // namespace sovsg
