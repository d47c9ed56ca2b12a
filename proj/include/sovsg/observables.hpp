#ifndef SOVSG_OBSERVABLES_HPP
#define SOVSG_OBSERVABLES_HPP

#include "sovsg/sov_basis.hpp"

namespace sovsg {

// sum_h prod_a Q(y_a^{h_a}) V(h) |y^h>
Vector build_eigenstate(const SOVFrame& frame, const AverageData& avg, const QFunction& q);

// sum_h prod_a (y_a^{h_a})^N V(h) prod_a Q'(-y_a^{h_a}) <y^h|
RowVector build_coeigenstate(const SOVFrame& frame, const AverageData& avg, const QFunction& q_prime);

enum class OperatorTag { kIdentity, kU1 };

// kCorrected reproduces the dense matrix elements of u_1; kLiteral is the
// uncorrected transcription, kept for comparison.
enum class FTableVariant { kCorrected, kLiteral };

// table[b](a, k): F_{O,b+1}(y_a^{(k)}), k = c mod p.
using FTable = std::vector<Matrix>;

FTable ff_coefficients(OperatorTag tag, const ModelParams& params, const AverageData& avg,
                       const BaxterCoeffs& coeffs, const QFunction& q_t, const QFunction& q_t_prime,
                       FTableVariant variant = FTableVariant::kCorrected);

struct FormFactorMatrix {
  Matrix phi;
  Complex det;
};

// Phi_{a,b} = (y_a^0)^{2b-1} sum_{c=1}^{p} F_b(y_a^c) Q_t(y_a^c) Q_t'(-y_a^c) q^{(2b-1)c}
FormFactorMatrix form_factor(const ModelParams& params, const AverageData& avg, const FTable& table,
                             const QFunction& q_t, const QFunction& q_t_prime);

FormFactorMatrix form_factor(OperatorTag tag, const ModelParams& params, const AverageData& avg,
                             const BaxterCoeffs& coeffs, const QFunction& q_t,
                             const QFunction& q_t_prime,
                             FTableVariant variant = FTableVariant::kCorrected);

inline Complex direct_matrix_element(const RowVector& left, const GlobalOperator& op, const Vector& right) {
  return (left * (op * right)).value();
}

}  // namespace sovsg

#endif  // SOVSG_OBSERVABLES_HPP
