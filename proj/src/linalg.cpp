#include "sovsg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/Polynomials>

#include "sovsg/errors.hpp"

namespace sovsg {

Complex polyval(const Vector& coeffs, Complex x) {
  Complex acc{0.0, 0.0};
  for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * x + coeffs(k);
  return acc;
}

Vector poly_from_linear_factors(std::span<const Complex> r) {
  Vector c = Vector::Zero(static_cast<Eigen::Index>(r.size()) + 1);
  c(0) = 1.0;
  Eigen::Index deg = 0;
  for (const Complex ri : r) {
    for (Eigen::Index k = deg + 1; k >= 1; --k) c(k) += ri * c(k - 1);
    ++deg;
  }
  return c;
}

namespace {

Complex polyder_val(const Vector& coeffs, Complex x) {
  Complex acc{0.0, 0.0};
  for (Eigen::Index k = coeffs.size() - 1; k >= 1; --k)
    acc = acc * x + static_cast<double>(k) * coeffs(k);
  return acc;
}

}  // namespace

std::vector<Complex> poly_roots(const Vector& coeffs) {
  Eigen::Index deg = coeffs.size() - 1;
  while (deg > 0 && coeffs(deg) == Complex{0.0, 0.0}) --deg;
  if (deg <= 0) return {};
  const Vector trimmed = coeffs.head(deg + 1);

  Eigen::PolynomialSolver<Complex, Eigen::Dynamic> solver;
  solver.compute(trimmed);
  const auto& raw = solver.roots();

  std::vector<Complex> roots(raw.data(), raw.data() + raw.size());
  for (Complex& z : roots) {
    for (int it = 0; it < 4; ++it) {
      const Complex f = polyval(trimmed, z);
      const Complex df = polyder_val(trimmed, z);
      if (df == Complex{0.0, 0.0}) break;
      const Complex step = f / df;
      z -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z)) break;
    }
  }
  return roots;
}

LaurentFit laurent_fit(std::span<const Complex> samples, const Vector& values,
                       std::span<const int> exponents) {
  const auto rows = static_cast<Eigen::Index>(samples.size());
  const auto cols = static_cast<Eigen::Index>(exponents.size());
  if (rows < cols) throw NumericalError("laurent_fit: fewer samples than coefficients");
  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) a(i, k) = std::pow(samples[i], exponents[k]);

  LaurentFit fit;
  fit.coeffs = a.colPivHouseholderQr().solve(values);
  const double vn = values.norm();
  fit.residual = vn == 0.0 ? 0.0 : (a * fit.coeffs - values).norm() / vn;
  return fit;
}

Complex laurent_eval(const Vector& coeffs, std::span<const int> exponents, Complex x) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < exponents.size(); ++k)
    acc += coeffs(static_cast<Eigen::Index>(k)) * std::pow(x, exponents[k]);
  return acc;
}

double hadamard_ratio(const Matrix& m) {
  double bound = 1.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) bound *= m.row(r).norm();
  if (bound == 0.0) return 0.0;
  return std::abs(m.determinant()) / bound;
}

JointEigenbasis joint_eigenbasis(std::span<const Matrix> family, std::uint64_t seed,
                                 double gap_tol, int max_attempts) {
  if (family.empty()) throw NumericalError("joint_eigenbasis: empty family");
  const Eigen::Index dim = family.front().rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;

  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    Matrix combo = Matrix::Zero(dim, dim);
    for (const Matrix& m : family) {
      const Complex c{normal(rng), normal(rng)};
      combo += (c / m.norm()) * m;
    }
    Eigen::ComplexEigenSolver<Matrix> es(combo);
    if (es.info() != Eigen::Success) continue;

    const Vector& w = es.eigenvalues();
    const double wscale = w.cwiseAbs().maxCoeff();
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = i + 1; j < dim; ++j) gap = std::min(gap, std::abs(w(i) - w(j)));
    if (dim > 1) gap /= wscale;
    if (dim > 1 && gap < gap_tol) continue;

    JointEigenbasis out;
    out.vectors = es.eigenvectors();
    for (Eigen::Index j = 0; j < dim; ++j) out.vectors.col(j).normalize();
    out.inverse = out.vectors.inverse();
    out.min_gap = dim > 1 ? gap : 1.0;
    out.attempts = attempt;

    Eigen::JacobiSVD<Matrix> svd(out.vectors);
    const auto& sv = svd.singularValues();
    out.condition = sv(0) / sv(sv.size() - 1);

    for (const Matrix& m : family) {
      const Matrix mv = m * out.vectors;
      Vector ev(dim);
      for (Eigen::Index j = 0; j < dim; ++j) {
        ev(j) = (out.inverse.row(j) * mv.col(j)).value();
        const double r = (mv.col(j) - ev(j) * out.vectors.col(j)).norm();
        out.max_residual = std::max(out.max_residual, r);
      }
      out.eigenvalues.push_back(std::move(ev));
    }
    return out;
  }
  throw DegenerateError("joint_eigenbasis: eigenvalue collision in the random combination after " +
                        std::to_string(max_attempts) + " attempts (joint spectrum not simple?)");
}

std::vector<Complex> sample_annulus(std::mt19937_64& rng, std::size_t count, double r_min,
                                    double r_max) {
  std::uniform_real_distribution<double> radius(r_min, r_max);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = radius(rng);
    out.push_back(std::polar(r, phase(rng)));
  }
  return out;
}

}  // namespace sovsg
