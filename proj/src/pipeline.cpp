#include "sovsg/pipeline.hpp"

#include <random>

namespace sovsg {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int pick_reference(const std::vector<TransferEigenpair>& pairs) {
  int best = 0;
  double best_min = -1.0;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const Matrix& g = pairs[j].q.grid_values;
    const double m = g.cwiseAbs().minCoeff() / g.cwiseAbs().maxCoeff();
    if (m > best_min) {
      best_min = m;
      best = static_cast<int>(j);
    }
  }
  return best;
}

Pipeline::Pipeline(ModelParams params, std::uint64_t seed)
    : params_(std::move(params)), seed_(seed), coeffs_(params_) {}

const AverageData& Pipeline::grids() {
  if (!avg_) avg_ = compute_grids(params_);
  return *avg_;
}

const OracleSpectrum& Pipeline::oracle() {
  if (!spectrum_) {
    std::mt19937_64 rng(derive_seed(seed_, kStreamSpectrum));
    const auto samples = sample_off_grid(rng, static_cast<std::size_t>(params_.n_sites) + 1, grids());
    const auto holdout = sample_off_grid(rng, 3, grids());
    spectrum_ = oracle_spectrum(params_, samples, holdout, rng());
  }
  return *spectrum_;
}

const OracleSpectrum& Pipeline::spectrum() {
  oracle();
  if (!have_q_) {
    for (auto& pair : spectrum_->pairs) pair.q = q_from_t(params_, grids(), coeffs_, pair.t_coeffs);
    have_q_ = true;
  }
  return *spectrum_;
}

const SOVFrame& Pipeline::labelled_frame() {
  if (!labelled_) {
    SOVFrame f = diagonalize_b_family(params_, grids(), derive_seed(seed_, kStreamFrame));
    f = label_vectors(std::move(f), grids(), params_);
    labelled_ = apply_measure_normalization(std::move(f), grids(), params_);
  }
  return *labelled_;
}

int Pipeline::reference() {
  if (reference_ < 0) reference_ = pick_reference(spectrum().pairs);
  return reference_;
}

const SOVFrame& Pipeline::frame() {
  if (!frame_) frame_ = calibrate_from_transfer(labelled_frame(), grids(), params_, coeffs_);
  return *frame_;
}

const SOVFrame& Pipeline::reference_frame() {
  if (!reference_frame_) {
    const auto& ref = spectrum().pairs[reference()];
    reference_frame_ = calibrate_scales(labelled_frame(), ref.q, ref.vector);
  }
  return *reference_frame_;
}

const std::vector<Vector>& Pipeline::states() {
  if (states_.empty())
    for (const auto& pair : spectrum().pairs) states_.push_back(build_eigenstate(frame(), grids(), pair.q));
  return states_;
}

const std::vector<RowVector>& Pipeline::costates() {
  if (costates_.empty())
    for (const auto& pair : spectrum().pairs) costates_.push_back(build_coeigenstate(frame(), grids(), pair.q));
  return costates_;
}

SovSolution solve_model(const ModelParams& params, std::uint64_t seed) {
  Pipeline pl(params, seed);
  pl.states();
  pl.costates();
  return SovSolution{pl.params(), pl.grids(), pl.coeffs(), pl.spectrum(), pl.frame(),
                     pl.reference(), pl.states(), pl.costates()};
}

}  // namespace sovsg
