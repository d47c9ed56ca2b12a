#include "sovsg/model.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "sovsg/errors.hpp"
#include "sovsg/linalg.hpp"

namespace sovsg {

Tolerances::Tolerances()
    : values_{
          {"rll", 1e-10},           {"commute", 1e-10},      {"average", 1e-8},
          {"centrality", 1e-9},     {"closed_form", 1e-10},  {"simultaneous", 1e-9},
          {"label", 1e-8},          {"measure", 1e-8},       {"biorthogonal", 1e-10},
          {"laurent_fit", 1e-9},    {"simplicity", 1e-8},    {"det_zero", 1e-8},
          {"det_away", 1e-6},       {"nullspace", 1e-6},     {"q_lsq", 1e-8},
          {"q_degree", 1e-8},       {"tq", 1e-8},            {"eigenstate", 1e-8},
          {"ff_zero", 1e-8},        {"ff_ratio", 1e-6},      {"reality", 1e-6},
          {"genericity", 1e-6},     {"weyl", 1e-12},         {"root", 1e-9},
          {"collision", 1e-8},      {"sov_action", 1e-8},
      } {}

double Tolerances::operator[](std::string_view name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw ConfigError("unknown tolerance '" + std::string(name) + "'");
  return it->second;
}

void Tolerances::set(std::string_view name, double value) {
  const auto it = values_.find(name);
  if (it == values_.end()) throw ConfigError("unknown tolerance '" + std::string(name) + "'");
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError("tolerance '" + std::string(name) + "' must be positive and finite");
  it->second = value;
}

bool Tolerances::contains(std::string_view name) const { return values_.contains(name); }

Eigen::Index ModelParams::dim() const {
  Eigen::Index d = 1;
  for (int n = 0; n < n_sites; ++n) d *= p;
  return d;
}

Complex ModelParams::q_pow(long k) const {
  // q^k = exp(-i pi p' k / p); reduce p' k modulo 2p first.
  const long period = 2L * p;
  long m = (static_cast<long>(p_prime) * k) % period;
  if (m < 0) m += period;
  return std::polar(1.0, -std::numbers::pi * static_cast<double>(m) / p);
}

ModelParams make_params(int n_sites, int p, int p_prime, std::vector<Complex> kappa,
                        std::vector<Complex> xi, Tolerances tol) {
  if (n_sites <= 0 || n_sites % 2 == 0)
    throw ConfigError("N must be a positive odd integer, got " + std::to_string(n_sites));
  if (p < 3 || p % 2 == 0) throw ConfigError("p must be an odd integer >= 3, got " + std::to_string(p));
  if (p_prime <= 0 || p_prime % 2 != 0)
    throw ConfigError("p' must be a positive even integer, got " + std::to_string(p_prime));
  if (std::gcd(p, p_prime) != 1) throw ConfigError("p and p' must be coprime");
  if (kappa.size() != static_cast<std::size_t>(n_sites) || xi.size() != static_cast<std::size_t>(n_sites))
    throw ConfigError("kappa and xi must each have N entries");
  for (std::size_t n = 0; n < kappa.size(); ++n) {
    if (kappa[n] == Complex{} || xi[n] == Complex{})
      throw ConfigError("couplings kappa_n, xi_n must be nonzero (site " + std::to_string(n + 1) + ")");
    if (!std::isfinite(std::abs(kappa[n])) || !std::isfinite(std::abs(xi[n])))
      throw ConfigError("couplings must be finite");
  }

  ModelParams params;
  params.n_sites = n_sites;
  params.p = p;
  params.p_prime = p_prime;
  params.beta_sq = static_cast<double>(p_prime) / p;
  params.q = params.q_pow(1);
  params.q_half = std::polar(1.0, -std::numbers::pi * params.beta_sq / 2.0);
  params.kappa = std::move(kappa);
  params.xi = std::move(xi);
  params.tol = std::move(tol);
  return params;
}

LocalOperator clock_v(const ModelParams& params) {
  LocalOperator v = LocalOperator::Zero(params.p, params.p);
  for (int k = 0; k < params.p; ++k) v(k, k) = params.q_pow(k);
  return v;
}

LocalOperator shift_u(const ModelParams& params) {
  LocalOperator u = LocalOperator::Zero(params.p, params.p);
  for (int k = 0; k < params.p; ++k) u((k - 1 + params.p) % params.p, k) = 1.0;
  return u;
}

GlobalOperator embed(const LocalOperator& op, int site, const ModelParams& params) {
  if (site < 1 || site > params.n_sites)
    throw ConfigError("site index " + std::to_string(site) + " outside 1.." + std::to_string(params.n_sites));
  if (op.rows() != params.p || op.cols() != params.p)
    throw ConfigError("embed: local operator must be p x p");
  Eigen::Index left = 1;
  for (int n = 1; n < site; ++n) left *= params.p;
  Eigen::Index right = 1;
  for (int n = site + 1; n <= params.n_sites; ++n) right *= params.p;
  return kron(kron(Matrix::Identity(left, left), op), Matrix::Identity(right, right));
}

}  // namespace sovsg
