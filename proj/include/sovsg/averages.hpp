#ifndef SOVSG_AVERAGES_HPP
#define SOVSG_AVERAGES_HPP

#include <functional>
#include <vector>

#include "sovsg/model.hpp"

namespace sovsg {

using OperatorFamily = std::function<GlobalOperator(Complex)>;

// prod_{k=1}^{p} O(q^k lambda), lambda the principal p-th root of Lambda.
// Throws NumericalError if the family does not commute at those points.
GlobalOperator average_operator(const OperatorFamily& family, Complex Lambda,
                                const ModelParams& params);

// Same product anchored at an explicit root lambda (lambda^p = Lambda).
GlobalOperator average_operator_at_root(const OperatorFamily& family, Complex lambda,
                                        const ModelParams& params);

// F(Lambda) = prod_r (kappa_r xi_r / i)^p (1 + s (kappa_r/xi_r)^p Lambda)
//             (1 + s Lambda / (kappa_r xi_r)^p) / Lambda,  s = (-1)^{p'/2} i^p.
Complex f_function(const ModelParams& params, Complex Lambda);

struct CentralAverages {
  Complex cal_a;  // = average of A = average of D
  Complex cal_b;  // = average of B = average of C
};
CentralAverages averages_closed_form(const ModelParams& params, Complex Lambda);

// Separate-variable spectrum data.
struct AverageData {
  std::vector<Complex> Z;   // one zero of cal_b per +/- pair, arg in [0, pi), |Z| ascending
  std::vector<Complex> y0;  // principal p-th roots
  Matrix grid;              // grid(n, k) = y0[n] q^k, N x p
  double min_separation = 0.0;  // over grid and negated grid
  double max_zero_residual = 0.0;  // max |cal_b(Z_n)| / (|F(Z_n)| + |F(-Z_n)|)
  // prod_n Z_n = sign * prod_r xi_r^p; the sign records the representative choice.
  double zero_product_sign = 1.0;

  int n_vars() const { return static_cast<int>(Z.size()); }
  int p() const { return static_cast<int>(grid.cols()); }
  // y_n^{(k)} with k reduced mod p (n is 0-based).
  Complex y(int n, long k) const;
};

// Zeros of Lambda^N cal_b(Lambda) (degree 2N, even) and the grids they induce.
AverageData compute_grids(const ModelParams& params);

// Coefficients of Lambda^N cal_b(Lambda), ascending in Lambda.
Vector cal_b_polynomial(const ModelParams& params);

// trace(op) / dim, the scalar of a (would-be) multiple of the identity.
Complex identity_scalar(const GlobalOperator& op);

}  // namespace sovsg

#endif  // SOVSG_AVERAGES_HPP
