#ifndef SOVSG_TYPES_HPP
#define SOVSG_TYPES_HPP

#include <complex>
#include <Eigen/Dense>

namespace sovsg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;

// p x p operator on a single site.
using LocalOperator = Matrix;
// p^N x p^N operator on the full tensor-product space.
using GlobalOperator = Matrix;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace sovsg

#endif  // SOVSG_TYPES_HPP
