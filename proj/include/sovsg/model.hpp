#ifndef SOVSG_MODEL_HPP
#define SOVSG_MODEL_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sovsg/types.hpp"

namespace sovsg {

// Named real thresholds. Every check in the library reads its threshold from
// here, so a run is fully described by (ModelParams, seed).
class Tolerances {
 public:
  Tolerances();

  double operator[](std::string_view name) const;
  void set(std::string_view name, double value);
  bool contains(std::string_view name) const;
  const std::map<std::string, double, std::less<>>& values() const { return values_; }

 private:
  std::map<std::string, double, std::less<>> values_;
};

// Lattice sine-Gordon at the root of unity q = exp(-i pi p'/p).
struct ModelParams {
  int n_sites = 0;
  int p = 0;
  int p_prime = 0;
  double beta_sq = 0.0;
  Complex q;
  Complex q_half;  // exp(-i pi beta^2 / 2), the single branch used everywhere
  std::vector<Complex> kappa;
  std::vector<Complex> xi;
  Tolerances tol;

  Eigen::Index dim() const;
  // q^k, computed from the reduced angle so that q^p == 1 exactly.
  Complex q_pow(long k) const;
};

ModelParams make_params(int n_sites, int p, int p_prime, std::vector<Complex> kappa,
                        std::vector<Complex> xi, Tolerances tol = {});

// v|k> = q^k |k>
LocalOperator clock_v(const ModelParams& params);
// u|k> = |k-1 mod p>
LocalOperator shift_u(const ModelParams& params);

// I_{p^{n-1}} (x) op (x) I_{p^{N-n}}, sites numbered 1..N with site 1 slowest.
GlobalOperator embed(const LocalOperator& op, int site, const ModelParams& params);

}  // namespace sovsg

#endif  // SOVSG_MODEL_HPP
