#ifndef SOVSG_YANG_BAXTER_HPP
#define SOVSG_YANG_BAXTER_HPP

#include "sovsg/model.hpp"

namespace sovsg {

// Lax operator L_n(lambda): a 2x2 matrix in auxiliary space whose entries are
// p x p operators on site n. Includes the overall kappa_n factor.
struct LaxMatrix {
  int site = 0;
  Complex lambda;
  LocalOperator a, b, c, d;
};

struct MonodromyMatrix {
  Complex lambda;
  GlobalOperator A, B, C, D;
};

LaxMatrix lax(const ModelParams& params, int site, Complex lambda);

// M(lambda) = L_N(lambda) ... L_1(lambda).
MonodromyMatrix monodromy(const ModelParams& params, Complex lambda);

// T(lambda) = A(lambda) + D(lambda).
GlobalOperator transfer(const ModelParams& params, Complex lambda);

// Trigonometric six-vertex R-matrix in multiplicative spectral parameter x,
//   diag-corner entries x s - 1/(x s), bulk x - 1/x, swap s - 1/s,
// with anisotropy s. The model satisfies RLL with s = q; s = q^{1/2} is kept
// for comparison only (it fails).
enum class RConvention { kFullAnisotropy, kHalfAnisotropy };

Eigen::Matrix4cd r_matrix(Complex ratio, Complex anisotropy);
Eigen::Matrix4cd r_matrix(const ModelParams& params, Complex ratio,
                          RConvention convention = RConvention::kFullAnisotropy);

struct RllCheck {
  double residual = 0.0;
  bool singular = false;  // R(lambda/mu) not invertible at this ratio
  double r_det = 0.0;     // |det R| / ||R||_F^4
};

// ||R (L(lambda) x 1)(1 x L(mu)) - (1 x L(mu))(L(lambda) x 1) R|| / ||LHS||
// on C^2 (x) C^2 (x) H_n.
RllCheck verify_rll(const ModelParams& params, int site, Complex lambda, Complex mu,
                    RConvention convention = RConvention::kFullAnisotropy);

}  // namespace sovsg

#endif  // SOVSG_YANG_BAXTER_HPP
