#ifndef SOVSG_LINALG_HPP
#define SOVSG_LINALG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "sovsg/types.hpp"

namespace sovsg {

template <typename A, typename B>
Matrix kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
}

// ||AB - BA||_F / ||AB||_F, the scale-free commutator residual.
template <typename A, typename B>
double commutator_residual(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const Matrix ab = a * b;
  const Matrix ba = b * a;
  const double scale = ab.norm();
  return scale == 0.0 ? (ab - ba).norm() : (ab - ba).norm() / scale;
}

// |<a, b>| / (|a| |b|).
template <typename A, typename B>
double normalized_overlap(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.derived().cwiseProduct(b.derived().conjugate()).sum()) / (na * nb);
}

// Sine of the angle between two vectors, accurate down to rounding
// (1 - overlap only resolves angles above ~1e-8).
template <typename A, typename B>
double direction_gap(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  const auto ua = (a.derived() / na).eval();
  const auto ub = (b.derived() / nb).eval();
  const Complex c = ua.cwiseProduct(ub.conjugate()).sum();
  return (ub * c - ua).norm();
}

// Horner evaluation of sum_k coeffs[k] x^k.
Complex polyval(const Vector& coeffs, Complex x);

// Product of linear factors (1 + r_i x), ascending coefficients.
Vector poly_from_linear_factors(std::span<const Complex> r);

// Roots of sum_k coeffs[k] x^k (companion-matrix eigenvalues), Newton-polished.
std::vector<Complex> poly_roots(const Vector& coeffs);

// Least-squares fit of values(x_i) = sum_k c_k x_i^{exponents[k]}.
struct LaurentFit {
  Vector coeffs;
  double residual = 0.0;  // ||A c - v|| / ||v||
};
LaurentFit laurent_fit(std::span<const Complex> samples, const Vector& values,
                       std::span<const int> exponents);
Complex laurent_eval(const Vector& coeffs, std::span<const int> exponents, Complex x);

// |det M| / prod_k ||row_k||. Lies in [0, 1] by Hadamard's inequality.
double hadamard_ratio(const Matrix& m);

// Eigenbasis shared by a commuting family, from one random linear combination.
struct JointEigenbasis {
  Matrix vectors;                  // unit-norm columns
  Matrix inverse;                  // rows: dual covectors
  std::vector<Vector> eigenvalues;  // eigenvalues[i](j): family member i, column j
  double max_residual = 0.0;       // max_{i,j} ||M_i v_j - e_ij v_j|| / ||v_j||
  double min_gap = 0.0;            // separation of the combination's eigenvalues
  double condition = 0.0;          // cond_2 of `vectors`
  int attempts = 0;
};
JointEigenbasis joint_eigenbasis(std::span<const Matrix> family, std::uint64_t seed,
                                 double gap_tol, int max_attempts = 5);

// Uniform samples on the annulus r_min <= |z| <= r_max with uniform phase.
std::vector<Complex> sample_annulus(std::mt19937_64& rng, std::size_t count, double r_min,
                                    double r_max);

}  // namespace sovsg

#endif  // SOVSG_LINALG_HPP
