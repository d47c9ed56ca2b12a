#include "sovsg/averages.hpp"

#include <algorithm>
#include <cmath>

#include "sovsg/errors.hpp"
#include "sovsg/linalg.hpp"

namespace sovsg {

namespace {

Complex principal_root(Complex z, int p) { return std::pow(z, 1.0 / p); }

// (-1)^{p'/2} i^p
Complex average_sign(const ModelParams& params) {
  const double sign = (params.p_prime / 2) % 2 == 0 ? 1.0 : -1.0;
  Complex ip{1.0, 0.0};
  for (int k = 0; k < params.p % 4; ++k) ip *= kI;
  return sign * ip;
}

}  // namespace

Complex AverageData::y(int n, long k) const {
  long m = k % grid.cols();
  if (m < 0) m += grid.cols();
  return grid(n, m);
}

GlobalOperator average_operator_at_root(const OperatorFamily& family, Complex lambda,
                                        const ModelParams& params) {
  std::vector<GlobalOperator> members;
  members.reserve(static_cast<std::size_t>(params.p));
  for (int k = 1; k <= params.p; ++k) members.push_back(family(params.q_pow(k) * lambda));

  const double tol = params.tol["centrality"];
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (commutator_residual(members[i], members[j]) > tol)
        throw NumericalError("average_operator: family does not commute at q^k lambda; product is ordering-dependent");

  GlobalOperator prod = members.front();
  for (std::size_t k = 1; k < members.size(); ++k) prod = prod * members[k];
  return prod;
}

GlobalOperator average_operator(const OperatorFamily& family, Complex Lambda,
                                const ModelParams& params) {
  if (Lambda == Complex{}) throw ConfigError("average_operator: Lambda must be nonzero");
  return average_operator_at_root(family, principal_root(Lambda, params.p), params);
}

Complex f_function(const ModelParams& params, Complex Lambda) {
  if (Lambda == Complex{}) throw ConfigError("f_function: Lambda must be nonzero");
  const Complex s = average_sign(params);
  const int p = params.p;
  Complex f{1.0, 0.0};
  for (int r = 0; r < params.n_sites; ++r) {
    const Complex k = params.kappa[r];
    const Complex x = params.xi[r];
    f *= std::pow(k * x / kI, p) * (1.0 + s * std::pow(k / x, p) * Lambda) *
         (1.0 + s * Lambda / std::pow(k * x, p)) / Lambda;
  }
  return f;
}

CentralAverages averages_closed_form(const ModelParams& params, Complex Lambda) {
  const Complex fp = f_function(params, Lambda);
  const Complex fm = f_function(params, -Lambda);
  return {(fm + fp) / 2.0, (fm - fp) / 2.0};
}

Vector cal_b_polynomial(const ModelParams& params) {
  // Lambda^N F(Lambda) = C prod_r (1 + s alpha_r L)(1 + s beta_r L); with N odd
  // only even powers survive in (Lambda^N F(-Lambda) - Lambda^N F(Lambda)) / 2.
  const Complex s = average_sign(params);
  const int p = params.p;
  std::vector<Complex> factors;
  Complex c{1.0, 0.0};
  for (int r = 0; r < params.n_sites; ++r) {
    const Complex k = params.kappa[r];
    const Complex x = params.xi[r];
    c *= std::pow(k * x / kI, p);
    factors.push_back(s * std::pow(k / x, p));
    factors.push_back(s / std::pow(k * x, p));
  }
  const Vector e = poly_from_linear_factors(factors);
  Vector out = Vector::Zero(e.size());
  const int n = params.n_sites;
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
    out(k) = c * e(k) * (sign - 1.0) / 2.0;
  }
  return out;
}

AverageData compute_grids(const ModelParams& params) {
  const int n = params.n_sites;
  const int p = params.p;
  const Vector poly = cal_b_polynomial(params);

  Vector in_s(n + 1);
  for (int j = 0; j <= n; ++j) in_s(j) = poly(2 * j);
  const std::vector<Complex> s_roots = poly_roots(in_s);
  if (static_cast<int>(s_roots.size()) != n)
    throw NumericalError("compute_grids: root finder returned " + std::to_string(s_roots.size()) +
                         " roots, expected " + std::to_string(n));

  const double smax = std::abs(*std::max_element(s_roots.begin(), s_roots.end(),
                                                  [](Complex a, Complex b) { return std::abs(a) < std::abs(b); }));
  for (std::size_t i = 0; i < s_roots.size(); ++i)
    for (std::size_t j = i + 1; j < s_roots.size(); ++j)
      if (std::abs(s_roots[i] - s_roots[j]) < params.tol["collision"] * smax)
        throw DegenerateError("compute_grids: repeated zeros of cal_B (degenerate parameters)");

  AverageData out;
  for (const Complex s : s_roots) {
    Complex z = std::sqrt(s);
    // Representative with arg in [0, pi); near-real roots snap to the real axis.
    if (std::abs(z.imag()) <= 1e-13 * std::abs(z)) z = Complex{std::abs(z.real()), 0.0};
    else if (z.imag() < 0.0) z = -z;
    out.Z.push_back(z);
  }
  std::sort(out.Z.begin(), out.Z.end(), [](Complex a, Complex b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });

  out.grid.resize(n, p);
  for (int i = 0; i < n; ++i) {
    const CentralAverages av = averages_closed_form(params, out.Z[i]);
    const double scale = std::abs(f_function(params, out.Z[i])) + std::abs(f_function(params, -out.Z[i]));
    out.max_zero_residual = std::max(out.max_zero_residual, std::abs(av.cal_b) / scale);
    out.y0.push_back(principal_root(out.Z[i], p));
    for (int k = 0; k < p; ++k) out.grid(i, k) = out.y0[i] * params.q_pow(k);
  }
  Complex ratio{1.0, 0.0};
  for (int i = 0; i < n; ++i) ratio *= out.Z[i] / std::pow(params.xi[i], p);
  out.zero_product_sign = ratio.real() > 0.0 ? 1.0 : -1.0;
  if (std::abs(ratio - out.zero_product_sign) > 1e-6)
    throw NumericalError("compute_grids: product of the zeros is not +/- prod xi^p");
  if (out.max_zero_residual > params.tol["root"])
    throw NumericalError("compute_grids: cal_B(Z_n) does not vanish to tolerance");

  std::vector<Complex> pts;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < p; ++k) {
      pts.push_back(out.grid(i, k));
      pts.push_back(-out.grid(i, k));
    }
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      sep = std::min(sep, std::abs(pts[i] - pts[j]) / std::max(std::abs(pts[i]), std::abs(pts[j])));
  out.min_separation = sep;
  if (sep < params.tol["genericity"])
    throw DegenerateError("compute_grids: separate-variable grids collide (separation " + std::to_string(sep) + ")");
  return out;
}

Complex identity_scalar(const GlobalOperator& op) {
  return op.trace() / static_cast<double>(op.rows());
}

}  // namespace sovsg
