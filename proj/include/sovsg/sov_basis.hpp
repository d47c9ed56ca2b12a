#ifndef SOVSG_SOV_BASIS_HPP
#define SOVSG_SOV_BASIS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "sovsg/spectrum.hpp"

namespace sovsg {

using Label = std::vector<int>;  // (h_1, ..., h_N), h_n in 0..p-1

// Mixed-radix index of a label, variable 1 slowest.
Eigen::Index label_index(const Label& h, int p);
Label index_label(Eigen::Index i, int n_vars, int p);

// prod_{b<a} (y_a/y_b - y_b/y_a) with y_n = y_n^{(h_n)}.
Complex vandermonde_factor(const AverageData& avg, const Label& h);

struct SOVFrame {
  std::vector<Label> labels;  // column i carries labels[i]
  Matrix right;               // columns |y^{(h)}>
  Matrix left;                // rows <y^{(h)}|
  Vector measure;             // expected pairing <y^h|y^h> = 1 / vandermonde_factor
  Vector scales;              // calibration factors already folded into `right`
  std::vector<Complex> samples;

  bool labeled = false;
  bool normalized = false;
  bool calibrated = false;

  double condition = 0.0;
  double simultaneity_residual = 0.0;  // ||B w - beta w|| / (||B|| ||w||), construction samples
  double label_residual = 0.0;         // worst relative ||B(g) w|| over the chosen grid points
  double label_margin = 0.0;           // smallest rejected residual over all variables
  double biorthogonality = 0.0;        // max off-diagonal |left right| relative to the diagonal
  double measure_residual = 0.0;       // max |pairing - measure| / |measure|
  double transfer_closure = 0.0;       // worst mismatch of <y^h|T(y_a) against a, d after calibration
  double transfer_pattern = 0.0;       // largest <y^h|T(y_a)|y^k> off h +/- e_a, relative to the row
  int attempts = 0;
};

// Eigenvectors of a random combination of B at N+1 samples away from the grids.
SOVFrame diagonalize_b_family(const ModelParams& params, const AverageData& avg, std::uint64_t seed);

// Attaches grid labels and reorders columns into label order.
SOVFrame label_vectors(SOVFrame frame, const AverageData& avg, const ModelParams& params);

// Rescales left covectors so that <y^h|y^h> equals the measure value.
SOVFrame apply_measure_normalization(SOVFrame frame, const AverageData& avg, const ModelParams& params);

// Fixes the right-vector scales so that, at y = y_a^{(h_a)},
//   <y^h| T(y) = a(y) <y^{h-e_a}| + d(y) <y^{h+e_a}|.
// Uses one edge per label to set the scales and reports the rest as closure.
SOVFrame calibrate_from_transfer(SOVFrame frame, const AverageData& avg, const ModelParams& params,
                                 const BaxterCoeffs& coeffs);
// Alternative: fixes the right-vector scales from a reference eigenstate: the expansion
// sum_h prod_a Q(y_a^{h_a}) V(h) |y^h> then reproduces `oracle_vector`.
SOVFrame calibrate_scales(SOVFrame frame, const QFunction& reference,
                          const Vector& oracle_vector);

// max ||B(lambda) w - beta w|| / (||B|| ||w||) over frame columns at the given points.
double frame_simultaneity(const SOVFrame& frame, const ModelParams& params,
                          std::span<const Complex> points);

// Product of Q(y_a^{h_a}), or Q(-y_a^{h_a}) when `negated`.
Complex q_product(const QFunction& q, const Label& h, bool negated = false);

// Draws `count` points on an annulus, rejecting those within `margin` (relative) of +/- grids.
std::vector<Complex> sample_off_grid(std::mt19937_64& rng, std::size_t count, const AverageData& avg,
                                     double margin = 1e-2);

}  // namespace sovsg

#endif  // SOVSG_SOV_BASIS_HPP
