#include "sovsg/config.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "sovsg/errors.hpp"
#include "sovsg/pipeline.hpp"

namespace sovsg {

namespace {

using nlohmann::json;

Complex read_complex(const json& v, const std::string& what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(what + ": expected a number or [re, im]");
}

std::vector<Complex> read_couplings(const json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + ": expected an array");
  std::vector<Complex> out;
  for (const auto& e : v) out.push_back(read_complex(e, what));
  return out;
}

int read_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ConfigError(what + ": expected an integer");
  return v.get<int>();
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::kText;
  if (name == "json") return OutputFormat::kJson;
  throw ConfigError("unknown output format '" + name + "' (text|json)");
}

void apply_config_json(RunConfig& cfg, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "N") cfg.n_sites = read_int(v, key);
    else if (key == "p") cfg.p = read_int(v, key);
    else if (key == "p_prime") cfg.p_prime = read_int(v, key);
    else if (key == "kappa") cfg.kappa = read_couplings(v, key);
    else if (key == "xi") cfg.xi = read_couplings(v, key);
    else if (key == "seed") {
      if (!v.is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "tolerances") {
      if (!v.is_object()) throw ConfigError("tolerances: expected an object");
      for (const auto& [name, t] : v.items()) {
        if (!t.is_number()) throw ConfigError("tolerance " + name + ": expected a number");
        cfg.tol.set(name, t.get<double>());
      }
    } else if (key == "lambda_grid") {
      if (!v.is_object()) throw ConfigError("lambda_grid: expected an object");
      for (const auto& [name, t] : v.items()) {
        if (name == "count") cfg.lambda_grid.count = read_int(t, "lambda_grid.count");
        else if (name == "r_min" && t.is_number()) cfg.lambda_grid.r_min = t.get<double>();
        else if (name == "r_max" && t.is_number()) cfg.lambda_grid.r_max = t.get<double>();
        else throw ConfigError("lambda_grid: bad key '" + name + "'");
      }
      if (cfg.lambda_grid.count < 1 || !(cfg.lambda_grid.r_min > 0.0) ||
          !(cfg.lambda_grid.r_max >= cfg.lambda_grid.r_min))
        throw ConfigError("lambda_grid: need count >= 1 and 0 < r_min <= r_max");
    } else if (key == "output") {
      if (!v.is_object()) throw ConfigError("output: expected an object");
      if (v.contains("path")) cfg.out = v["path"].get<std::string>();
      if (v.contains("format")) cfg.format = parse_format(v["format"].get<std::string>());
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig cfg;
  apply_config_json(cfg, buf.str());
  return cfg;
}

ModelParams resolve_params(const RunConfig& cfg) {
  std::mt19937_64 rng(derive_seed(cfg.seed, kStreamCouplings));
  std::uniform_real_distribution<double> uni(0.5, 2.0);
  auto draw = [&]() {
    std::vector<Complex> v;
    for (int n = 0; n < std::max(cfg.n_sites, 0); ++n) v.emplace_back(uni(rng), 0.0);
    return v;
  };
  std::vector<Complex> kappa = cfg.kappa ? *cfg.kappa : draw();
  std::vector<Complex> xi = cfg.xi ? *cfg.xi : draw();
  return make_params(cfg.n_sites, cfg.p, cfg.p_prime, std::move(kappa), std::move(xi), cfg.tol);
}

}  // namespace sovsg
