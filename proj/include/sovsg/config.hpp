#ifndef SOVSG_CONFIG_HPP
#define SOVSG_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sovsg/model.hpp"

namespace sovsg {

struct LambdaGrid {
  int count = 8;
  double r_min = 0.5;
  double r_max = 2.0;
};

enum class OutputFormat { kText, kJson };

struct RunConfig {
  int n_sites = 3;
  int p = 3;
  int p_prime = 2;
  std::optional<std::vector<Complex>> kappa;  // drawn from the seed when absent
  std::optional<std::vector<Complex>> xi;
  std::uint64_t seed = 7;
  Tolerances tol;
  LambdaGrid lambda_grid;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::kText;
  bool ab_initio = false;
};

// Reads a JSON config file. Unknown keys are rejected.
RunConfig load_config(const std::string& path);
void apply_config_json(RunConfig& cfg, const std::string& text);

// Validated parameters; missing couplings drawn uniformly from [0.5, 2].
ModelParams resolve_params(const RunConfig& cfg);

OutputFormat parse_format(const std::string& name);

}  // namespace sovsg

#endif  // SOVSG_CONFIG_HPP
