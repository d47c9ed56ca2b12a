#ifndef SOVSG_TEST_HELPERS_HPP
#define SOVSG_TEST_HELPERS_HPP

#include <vector>

#include "sovsg/model.hpp"

namespace sovsg::test {

// Fixed generic couplings, real and positive.
inline ModelParams real_params(int n_sites = 3, int p = 3, int p_prime = 2) {
  std::vector<Complex> kappa, xi;
  for (int n = 0; n < n_sites; ++n) {
    kappa.emplace_back(0.7 + 0.31 * n, 0.0);
    xi.emplace_back(1.3 - 0.17 * n, 0.0);
  }
  return make_params(n_sites, p, p_prime, kappa, xi);
}

inline ModelParams complex_params(int n_sites = 3, int p = 3, int p_prime = 2) {
  std::vector<Complex> kappa, xi;
  for (int n = 0; n < n_sites; ++n) {
    kappa.emplace_back(0.8 + 0.2 * n, 0.3 - 0.1 * n);
    xi.emplace_back(1.1 - 0.1 * n, -0.25 + 0.2 * n);
  }
  return make_params(n_sites, p, p_prime, kappa, xi);
}

}  // namespace sovsg::test

#endif
