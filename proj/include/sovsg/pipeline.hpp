#ifndef SOVSG_PIPELINE_HPP
#define SOVSG_PIPELINE_HPP

#include <cstdint>
#include <optional>

#include "sovsg/observables.hpp"

namespace sovsg {

// Independent, reproducible sub-seeds from one run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

enum Stream : std::uint64_t {
  kStreamSpectrum = 1,
  kStreamFrame = 2,
  kStreamChecks = 3,
  kStreamAbInitio = 4,
  kStreamCouplings = 5,
};

// Index of the pair whose Q is furthest from vanishing on the grids.
int pick_reference(const std::vector<TransferEigenpair>& pairs);

// Stages built on first use and cached:
// grids -> oracle spectrum -> Q-functions -> labelled frame -> calibration -> states.
class Pipeline {
 public:
  Pipeline(ModelParams params, std::uint64_t seed);

  const ModelParams& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }
  const BaxterCoeffs& coeffs() const { return coeffs_; }

  const AverageData& grids();
  const OracleSpectrum& oracle();        // t_coeffs and vectors
  const OracleSpectrum& spectrum();      // plus Q-functions
  const SOVFrame& labelled_frame();      // labelled and measure-normalized
  const SOVFrame& frame();               // calibrated from the action of T
  const SOVFrame& reference_frame();     // calibrated on the reference eigenvector instead
  int reference();
  const std::vector<Vector>& states();
  const std::vector<RowVector>& costates();

 private:
  ModelParams params_;
  std::uint64_t seed_;
  BaxterCoeffs coeffs_;
  std::optional<AverageData> avg_;
  std::optional<OracleSpectrum> spectrum_;
  bool have_q_ = false;
  std::optional<SOVFrame> labelled_;
  std::optional<SOVFrame> frame_;
  std::optional<SOVFrame> reference_frame_;
  int reference_ = -1;
  std::vector<Vector> states_;
  std::vector<RowVector> costates_;
};

struct SovSolution {
  ModelParams params;
  AverageData avg;
  BaxterCoeffs coeffs;
  OracleSpectrum spectrum;  // pairs carry Q-functions
  SOVFrame frame;           // labelled, normalized, calibrated
  int reference = 0;
  std::vector<Vector> states;       // SOV-built eigenvectors, same order as spectrum.pairs
  std::vector<RowVector> costates;  // SOV-built co-eigenvectors
};

SovSolution solve_model(const ModelParams& params, std::uint64_t seed);

}  // namespace sovsg

#endif  // SOVSG_PIPELINE_HPP
