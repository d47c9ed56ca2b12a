#ifndef SOVSG_SPECTRUM_HPP
#define SOVSG_SPECTRUM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sovsg/averages.hpp"

namespace sovsg {

// a(lambda) = prod_r (kappa_r xi_r / (i lambda)) (1 + i lambda kappa_r / (q^{1/2} xi_r))
//                                              (1 + i lambda / (q^{1/2} kappa_r xi_r))
// d(lambda) = q^N a(-lambda q)
class BaxterCoeffs {
 public:
  explicit BaxterCoeffs(const ModelParams& params);

  Complex a(Complex lambda) const;
  Complex d(Complex lambda) const;

 private:
  int n_sites_;
  Complex q_;
  Complex q_half_;
  std::vector<Complex> kappa_;
  std::vector<Complex> xi_;
};

inline BaxterCoeffs baxter_coeffs(const ModelParams& params) { return BaxterCoeffs(params); }

// t(lambda) = sum_k c_k lambda^{2k-(N-1)}
std::vector<int> transfer_exponents(int n_sites);
Complex eval_transfer(const Vector& t_coeffs, Complex lambda);

struct QFunction {
  Vector coeffs;         // ascending, N(p-1)+1 entries, largest-modulus coefficient = 1
  Matrix grid_values;    // Q(y_n^{(k)}), N x p
  Matrix neg_values;     // Q(-y_n^{(k)}), N x p
  double lsq_residual = 0.0;   // ||S x|| for the unit solution of the column-scaled grid system S
  double uniqueness = 0.0;     // smallest nonzero / largest singular value of S
  double null_gap = 0.0;       // worst per-grid second-smallest / largest singular value
  double imag_residue = 0.0;   // max |Im c_k|

  Complex operator()(Complex lambda) const;
  Complex at(int n, long k) const;      // Q(y_n^{(k mod p)})
  Complex at_neg(int n, long k) const;  // Q(-y_n^{(k mod p)})
  int degree_bound() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct TransferEigenpair {
  int index = 0;
  Vector t_coeffs;
  Vector vector;        // unit-norm oracle right eigenvector
  RowVector left;       // matching row of the inverse eigenvector matrix
  double fit_residual = 0.0;      // Laurent fit on the construction samples
  double holdout_residual = 0.0;  // relative eigenvalue mismatch at held-out samples
  QFunction q;
};

struct OracleSpectrum {
  std::vector<TransferEigenpair> pairs;
  std::vector<Complex> samples;
  std::vector<Complex> holdout;
  double max_eig_residual = 0.0;
  double min_gap = 0.0;          // smallest pairwise distance between t_coeff vectors, relative
  double condition = 0.0;
};

// Brute-force transfer-matrix spectrum: joint eigenbasis of T at the samples,
// with eigenvalues fitted to the Laurent class. Pairs are sorted by t_coeffs.
OracleSpectrum oracle_spectrum(const ModelParams& params, std::span<const Complex> samples,
                               std::span<const Complex> holdout, std::uint64_t seed);

// Cyclic tridiagonal D_n(t): row k holds t(y^k) at k, -a(y^k) at k-1, -d(y^k) at k+1.
Matrix separate_system(const ModelParams& params, const AverageData& avg,
                       const BaxterCoeffs& coeffs, const Vector& t_coeffs, int n);

// Q-function of t from the per-grid null vectors of D_n(t).
QFunction q_from_t(const ModelParams& params, const AverageData& avg,
                   const BaxterCoeffs& coeffs, const Vector& t_coeffs);

// |t Q - a Q(l/q) - d Q(l q)| / (|t Q| + |a Q(l/q)| + |d Q(l q)|)
double tq_residual(const ModelParams& params, const BaxterCoeffs& coeffs,
                   const Vector& t_coeffs, const QFunction& q, Complex lambda);

// Solves the functional TQ equation at random off-grid points for a polynomial
// of degree N(p-1) + extra and returns the largest |coefficient| above degree
// N(p-1), relative to the largest coefficient. `uniqueness` receives the
// second-smallest / largest singular value of the system.
double q_degree_excess(const ModelParams& params, const AverageData& avg, const BaxterCoeffs& coeffs,
                       const Vector& t_coeffs, std::uint64_t seed, int extra, double* uniqueness = nullptr);

// Ab-initio alternative: damped Newton on (det D_1, ..., det D_N) from random
// starting points. Returns the distinct converged t_coeffs.
struct AbInitioResult {
  std::vector<Vector> solutions;
  int starts = 0;
  int converged = 0;
};
AbInitioResult ab_initio_spectrum(const ModelParams& params, const AverageData& avg,
                                  const BaxterCoeffs& coeffs, std::uint64_t seed, int starts);

}  // namespace sovsg

#endif  // SOVSG_SPECTRUM_HPP
