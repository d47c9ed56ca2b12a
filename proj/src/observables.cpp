#include "sovsg/observables.hpp"

#include <cmath>

#include "sovsg/errors.hpp"

namespace sovsg {

Vector build_eigenstate(const SOVFrame& frame, const AverageData& avg, const QFunction& q) {
  if (!frame.calibrated) throw ConfigError("build_eigenstate: frame is not calibrated");
  Vector c(frame.right.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c(i) = q_product(q, frame.labels[i]) * vandermonde_factor(avg, frame.labels[i]);
  return frame.right * c;
}

RowVector build_coeigenstate(const SOVFrame& frame, const AverageData& avg, const QFunction& q_prime) {
  if (!frame.calibrated) throw ConfigError("build_coeigenstate: frame is not calibrated");
  const int n = avg.n_vars();
  RowVector c(frame.left.rows());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const Label& h = frame.labels[i];
    Complex w = q_product(q_prime, h, true) * vandermonde_factor(avg, h);
    for (int a = 0; a < n; ++a) w *= std::pow(avg.grid(a, h[a]), n);
    c(i) = w;
  }
  return c * frame.left;
}

FTable ff_coefficients(OperatorTag tag, const ModelParams& params, const AverageData& avg,
                       const BaxterCoeffs& coeffs, const QFunction& q_t, const QFunction& q_t_prime,
                       FTableVariant variant) {
  const int n = avg.n_vars();
  const int p = avg.p();
  FTable table(static_cast<std::size_t>(n), Matrix::Ones(n, p));
  if (tag == OperatorTag::kIdentity) return table;

  Complex kprod{1.0, 0.0};
  for (int r = 1; r < n; ++r) kprod *= params.kappa[r] / kI;
  const Complex xk = params.xi[0] * params.kappa[0];

  for (int b = 0; b + 1 < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int k = 0; k < p; ++k) table[b](a, k) = avg.grid(a, k);

  for (int a = 0; a < n; ++a) {
    const Complex y0 = avg.grid(a, 0);
    for (int c = 1; c <= p; ++c) {
      const Complex yc = avg.y(a, c);
      const Complex yc1 = avg.y(a, c + 1);
      const Complex den_q = q_t_prime.at_neg(a, c);
      if (std::abs(den_q) == 0.0)
        throw NumericalError("ff_coefficients: Q_t'(-y) vanishes where it divides");
      Complex f = params.q_half * params.xi[0] * q_t_prime.at_neg(a, c + 1) / den_q * coeffs.a(yc1) /
                  (kprod * (params.q * xk * xk + yc1 * yc1));
      if (variant == FTableVariant::kLiteral)
        f *= std::pow(y0, 2 * (n - 1)) * params.q_pow(static_cast<long>(c + 1) * (n - 1)) * q_t.at(a, c);
      else
        f *= avg.zero_product_sign * params.q_pow(n + 1) * std::pow(yc, 2 - n);
      table[n - 1](a, c % p) = f;
    }
  }
  return table;
}

FormFactorMatrix form_factor(const ModelParams& params, const AverageData& avg, const FTable& table,
                             const QFunction& q_t, const QFunction& q_t_prime) {
  const int n = avg.n_vars();
  const int p = avg.p();
  if (static_cast<int>(table.size()) != n) throw ConfigError("form_factor: F table must have N columns");
  FormFactorMatrix out;
  out.phi.resize(n, n);
  for (int a = 0; a < n; ++a) {
    const Complex y0 = avg.grid(a, 0);
    for (int b = 1; b <= n; ++b) {
      Complex sum{0.0, 0.0};
      for (int c = 1; c <= p; ++c)
        sum += table[b - 1](a, c % p) * q_t.at(a, c) * q_t_prime.at_neg(a, c) *
               params.q_pow(static_cast<long>(2 * b - 1) * c);
      out.phi(a, b - 1) = std::pow(y0, 2 * b - 1) * sum;
    }
  }
  out.det = out.phi.determinant();
  return out;
}

FormFactorMatrix form_factor(OperatorTag tag, const ModelParams& params, const AverageData& avg,
                             const BaxterCoeffs& coeffs, const QFunction& q_t,
                             const QFunction& q_t_prime, FTableVariant variant) {
  return form_factor(params, avg, ff_coefficients(tag, params, avg, coeffs, q_t, q_t_prime, variant), q_t,
                     q_t_prime);
}

}  // namespace sovsg
