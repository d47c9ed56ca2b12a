#include "sovsg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sovsg/errors.hpp"
#include "sovsg/linalg.hpp"
#include "sovsg/yang_baxter.hpp"

namespace sovsg {

BaxterCoeffs::BaxterCoeffs(const ModelParams& params)
    : n_sites_(params.n_sites),
      q_(params.q),
      q_half_(params.q_half),
      kappa_(params.kappa),
      xi_(params.xi) {}

Complex BaxterCoeffs::a(Complex lambda) const {
  if (lambda == Complex{}) throw ConfigError("a(lambda): lambda must be nonzero");
  Complex acc{1.0, 0.0};
  for (int r = 0; r < n_sites_; ++r) {
    const Complex k = kappa_[r];
    const Complex x = xi_[r];
    acc *= (k * x / (kI * lambda)) * (1.0 + kI * lambda * k / (q_half_ * x)) *
           (1.0 + kI * lambda / (q_half_ * k * x));
  }
  return acc;
}

Complex BaxterCoeffs::d(Complex lambda) const {
  return std::pow(q_, n_sites_) * a(-lambda * q_);
}

std::vector<int> transfer_exponents(int n_sites) {
  std::vector<int> e(static_cast<std::size_t>(n_sites));
  for (int k = 0; k < n_sites; ++k) e[k] = 2 * k - (n_sites - 1);
  return e;
}

Complex eval_transfer(const Vector& t_coeffs, Complex lambda) {
  const int n = static_cast<int>(t_coeffs.size());
  Complex acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) acc += t_coeffs(k) * std::pow(lambda, 2 * k - (n - 1));
  return acc;
}

Complex QFunction::operator()(Complex lambda) const { return polyval(coeffs, lambda); }

Complex QFunction::at(int n, long k) const {
  long m = k % grid_values.cols();
  if (m < 0) m += grid_values.cols();
  return grid_values(n, m);
}

Complex QFunction::at_neg(int n, long k) const {
  long m = k % neg_values.cols();
  if (m < 0) m += neg_values.cols();
  return neg_values(n, m);
}

OracleSpectrum oracle_spectrum(const ModelParams& params, std::span<const Complex> samples,
                               std::span<const Complex> holdout, std::uint64_t seed) {
  const int n = params.n_sites;
  if (static_cast<int>(samples.size()) < n)
    throw ConfigError("oracle_spectrum: need at least N spectral samples");

  std::vector<Matrix> family;
  family.reserve(samples.size());
  for (const Complex l : samples) family.push_back(transfer(params, l));
  const JointEigenbasis jb = joint_eigenbasis(family, seed, params.tol["collision"]);

  OracleSpectrum out;
  out.samples.assign(samples.begin(), samples.end());
  out.holdout.assign(holdout.begin(), holdout.end());
  out.condition = jb.condition;
  for (std::size_t i = 0; i < family.size(); ++i)
    out.max_eig_residual = std::max(out.max_eig_residual, jb.max_residual / family[i].norm());

  std::vector<Matrix> held;
  for (const Complex l : holdout) held.push_back(transfer(params, l));

  const std::vector<int> exps = transfer_exponents(n);
  const Eigen::Index dim = params.dim();
  for (Eigen::Index j = 0; j < dim; ++j) {
    Vector vals(static_cast<Eigen::Index>(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i) vals(static_cast<Eigen::Index>(i)) = jb.eigenvalues[i](j);
    const LaurentFit fit = laurent_fit(samples, vals, exps);

    TransferEigenpair pair;
    pair.t_coeffs = fit.coeffs;
    pair.vector = jb.vectors.col(j);
    pair.left = jb.inverse.row(j);
    pair.fit_residual = fit.residual;
    for (std::size_t i = 0; i < holdout.size(); ++i) {
      const Complex measured = (pair.left * (held[i] * pair.vector)).value();
      const Complex predicted = eval_transfer(pair.t_coeffs, holdout[i]);
      const double r = std::abs(measured - predicted) / std::max(std::abs(measured), held[i].norm() * 1e-3);
      pair.holdout_residual = std::max(pair.holdout_residual, r);
    }
    out.pairs.push_back(std::move(pair));
  }

  std::sort(out.pairs.begin(), out.pairs.end(), [](const TransferEigenpair& x, const TransferEigenpair& y) {
    for (Eigen::Index k = x.t_coeffs.size() - 1; k >= 0; --k) {
      if (x.t_coeffs(k).real() != y.t_coeffs(k).real()) return x.t_coeffs(k).real() < y.t_coeffs(k).real();
      if (x.t_coeffs(k).imag() != y.t_coeffs(k).imag()) return x.t_coeffs(k).imag() < y.t_coeffs(k).imag();
    }
    return false;
  });
  for (std::size_t j = 0; j < out.pairs.size(); ++j) out.pairs[j].index = static_cast<int>(j);

  double scale = 0.0;
  for (const auto& pr : out.pairs) scale = std::max(scale, pr.t_coeffs.norm());
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.pairs.size(); ++i)
    for (std::size_t j = i + 1; j < out.pairs.size(); ++j)
      out.min_gap = std::min(out.min_gap, (out.pairs[i].t_coeffs - out.pairs[j].t_coeffs).norm() / scale);
  if (out.pairs.size() < 2) out.min_gap = 1.0;
  return out;
}

Matrix separate_system(const ModelParams& params, const AverageData& avg,
                       const BaxterCoeffs& coeffs, const Vector& t_coeffs, int n) {
  const int p = params.p;
  Matrix m = Matrix::Zero(p, p);
  for (int k = 0; k < p; ++k) {
    const Complex y = avg.grid(n, k);
    m(k, k) += eval_transfer(t_coeffs, y);
    m(k, (k + p - 1) % p) -= coeffs.a(y);
    m(k, (k + 1) % p) -= coeffs.d(y);
  }
  return m;
}

QFunction q_from_t(const ModelParams& params, const AverageData& avg,
                   const BaxterCoeffs& coeffs, const Vector& t_coeffs) {
  const int n_vars = params.n_sites;
  const int p = params.p;
  const int degree = n_vars * (p - 1);

  QFunction out;
  std::vector<Vector> nulls;
  for (int n = 0; n < n_vars; ++n) {
    const Matrix dn = separate_system(params, avg, coeffs, t_coeffs, n);
    Eigen::JacobiSVD<Matrix> svd(dn, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) throw DegenerateError("q_from_t: separate system vanishes identically");
    const double smallest = sv(p - 1) / sv(0);
    const double second = sv(p - 2) / sv(0);
    if (smallest > params.tol["nullspace"])
      throw NumericalError("q_from_t: D_" + std::to_string(n + 1) + "(t) is not singular (t not in the spectrum?)");
    if (second <= 1e3 * std::max(smallest, 1e-16))
      throw DegenerateError("q_from_t: nullspace of D_" + std::to_string(n + 1) + "(t) is not one-dimensional");
    out.null_gap = n == 0 ? second : std::min(out.null_gap, second);
    nulls.push_back(svd.matrixV().col(p - 1));
  }

  // Unknowns: Q coefficients (degree+1) and one scale per grid.
  // Rows: Q(y_n^k) - sigma_n phi_n(k) = 0. Columns rescaled to unit norm.
  const int cols = degree + 1 + n_vars;
  Matrix sys = Matrix::Zero(n_vars * p, cols);
  for (int n = 0; n < n_vars; ++n)
    for (int k = 0; k < p; ++k) {
      const Complex y = avg.grid(n, k);
      Complex pw{1.0, 0.0};
      for (int m = 0; m <= degree; ++m, pw *= y) sys(n * p + k, m) = pw;
      sys(n * p + k, degree + 1 + n) = -nulls[n](k);
    }
  Eigen::VectorXd col_scale(cols);
  for (int c = 0; c < cols; ++c) {
    col_scale(c) = sys.col(c).norm();
    if (col_scale(c) == 0.0) col_scale(c) = 1.0;
    sys.col(c) /= col_scale(c);
  }
  Eigen::JacobiSVD<Matrix> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::Index last = std::min<Eigen::Index>(sys.rows(), cols) - 1;
  Vector x = svd.matrixV().col(cols - 1);
  out.lsq_residual = (sys * x).norm();
  out.uniqueness = sv(last) / sv(0);
  for (int c = 0; c < cols; ++c) x(c) /= col_scale(c);

  out.coeffs = x.head(degree + 1);
  Eigen::Index imax = 0;
  out.coeffs.cwiseAbs().maxCoeff(&imax);
  out.coeffs /= out.coeffs(imax);
  if (out.lsq_residual > params.tol["q_lsq"])
    throw NumericalError("q_from_t: grid values inconsistent with a polynomial of degree N(p-1)");
  if (out.uniqueness <= 1e-13)
    throw DegenerateError("q_from_t: polynomial through the grid values is not unique up to scale");

  out.imag_residue = out.coeffs.imag().cwiseAbs().maxCoeff();
  out.grid_values.resize(n_vars, p);
  out.neg_values.resize(n_vars, p);
  for (int n = 0; n < n_vars; ++n)
    for (int k = 0; k < p; ++k) {
      out.grid_values(n, k) = out(avg.grid(n, k));
      out.neg_values(n, k) = out(-avg.grid(n, k));
    }
  return out;
}

double tq_residual(const ModelParams& params, const BaxterCoeffs& coeffs,
                   const Vector& t_coeffs, const QFunction& q, Complex lambda) {
  const Complex lhs = eval_transfer(t_coeffs, lambda) * q(lambda);
  const Complex r1 = coeffs.a(lambda) * q(lambda / params.q);
  const Complex r2 = coeffs.d(lambda) * q(lambda * params.q);
  const double scale = std::abs(lhs) + std::abs(r1) + std::abs(r2);
  return scale == 0.0 ? 0.0 : std::abs(lhs - r1 - r2) / scale;
}

double q_degree_excess(const ModelParams& params, const AverageData& avg, const BaxterCoeffs& coeffs,
                       const Vector& t_coeffs, std::uint64_t seed, int extra, double* uniqueness) {
  const int degree = params.n_sites * (params.p - 1);
  const int cols = degree + extra + 1;
  std::mt19937_64 rng(seed);
  std::vector<Complex> pts;
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (const Complex y : avg.y0) {
    rmin = std::min(rmin, std::abs(y));
    rmax = std::max(rmax, std::abs(y));
  }
  while (static_cast<int>(pts.size()) < 3 * cols) {
    const Complex z = sample_annulus(rng, 1, 0.5 * rmin, 1.5 * rmax).front();
    bool ok = true;
    for (Eigen::Index n = 0; n < avg.grid.rows(); ++n)
      for (Eigen::Index k = 0; k < avg.grid.cols(); ++k)
        ok = ok && std::abs(z - avg.grid(n, k)) > 1e-2 * std::abs(z);
    if (ok) pts.push_back(z);
  }

  // Row i: sum_m c_m lambda_i^m (t - a q^{-m} - d q^m), scaled to unit norm.
  Matrix sys(static_cast<Eigen::Index>(pts.size()), cols);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Complex l = pts[i];
    const Complex t = eval_transfer(t_coeffs, l);
    const Complex a = coeffs.a(l);
    const Complex d = coeffs.d(l);
    Complex pw{1.0, 0.0};
    for (int m = 0; m < cols; ++m, pw *= l)
      sys(static_cast<Eigen::Index>(i), m) = pw * (t - a * params.q_pow(-m) - d * params.q_pow(m));
    sys.row(static_cast<Eigen::Index>(i)).normalize();
  }
  // Column scaling keeps the monomials comparable.
  Eigen::VectorXd col_scale(cols);
  for (int c = 0; c < cols; ++c) {
    col_scale(c) = sys.col(c).norm();
    sys.col(c) /= col_scale(c);
  }
  Eigen::JacobiSVD<Matrix> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (uniqueness) *uniqueness = sv(cols - 2) / sv(0);
  Vector c = svd.matrixV().col(cols - 1);
  for (int k = 0; k < cols; ++k) c(k) /= col_scale(k);
  const double top = c.cwiseAbs().maxCoeff();
  return c.tail(extra).cwiseAbs().maxCoeff() / top;
}

namespace {

Vector det_vector(const ModelParams& params, const AverageData& avg, const BaxterCoeffs& coeffs,
                  const Vector& t) {
  Vector f(params.n_sites);
  for (int n = 0; n < params.n_sites; ++n) f(n) = separate_system(params, avg, coeffs, t, n).determinant();
  return f;
}

double det_ratio(const ModelParams& params, const AverageData& avg, const BaxterCoeffs& coeffs,
                 const Vector& t) {
  double worst = 0.0;
  for (int n = 0; n < params.n_sites; ++n)
    worst = std::max(worst, hadamard_ratio(separate_system(params, avg, coeffs, t, n)));
  return worst;
}

}  // namespace

AbInitioResult ab_initio_spectrum(const ModelParams& params, const AverageData& avg,
                                  const BaxterCoeffs& coeffs, std::uint64_t seed, int starts) {
  const int n = params.n_sites;
  std::mt19937_64 rng(seed);

  // Starting box from the size of a + d on the grids.
  double box = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < params.p; ++k) {
      const Complex y = avg.grid(i, k);
      box = std::max(box, (std::abs(coeffs.a(y)) + std::abs(coeffs.d(y))) /
                              std::max(1.0, std::pow(std::abs(y), n - 1)));
    }
  std::uniform_real_distribution<double> uni(-box, box);

  AbInitioResult out;
  out.starts = starts;
  const double h = 1e-7;
  for (int s = 0; s < starts; ++s) {
    Vector t(n);
    for (int k = 0; k < n; ++k) t(k) = Complex{uni(rng), 0.1 * uni(rng)};
    Vector f = det_vector(params, avg, coeffs, t);
    bool done = false;
    for (int it = 0; it < 60 && !done; ++it) {
      Matrix jac(n, n);
      for (int k = 0; k < n; ++k) {
        Vector tp = t;
        const double step = h * std::max(1.0, std::abs(t(k)));
        tp(k) += step;
        jac.col(k) = (det_vector(params, avg, coeffs, tp) - f) / step;
      }
      const Vector dt = jac.fullPivLu().solve(-f);
      double damp = 1.0;
      Vector trial = t + dt;
      Vector ft = det_vector(params, avg, coeffs, trial);
      while (ft.norm() > f.norm() && damp > 1e-4) {
        damp /= 2.0;
        trial = t + damp * dt;
        ft = det_vector(params, avg, coeffs, trial);
      }
      t = trial;
      f = ft;
      done = det_ratio(params, avg, coeffs, t) <= params.tol["det_zero"];
    }
    if (!done) continue;
    ++out.converged;
    const bool seen = std::any_of(out.solutions.begin(), out.solutions.end(), [&](const Vector& s2) {
      return (s2 - t).norm() <= 1e-6 * std::max(1.0, t.norm());
    });
    if (!seen) out.solutions.push_back(t);
  }
  return out;
}

}  // namespace sovsg
