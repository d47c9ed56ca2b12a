#include "doctest.h"
#include "sovsg/commands.hpp"
#include "sovsg/config.hpp"
#include "sovsg/errors.hpp"

using namespace sovsg;

TEST_CASE("config parsing") {
  RunConfig cfg;
  apply_config_json(cfg, R"({"N": 1, "p": 5, "p_prime": 4, "kappa": [[1.0, 0.5]], "xi": [2.0],
                            "seed": 3, "tolerances": {"root": 1e-8}})");
  CHECK(cfg.n_sites == 1);
  CHECK(cfg.p == 5);
  CHECK(cfg.seed == 3);
  CHECK(cfg.tol["root"] == 1e-8);
  REQUIRE(cfg.kappa.has_value());
  CHECK((*cfg.kappa)[0] == Complex(1.0, 0.5));
  const ModelParams m = resolve_params(cfg);
  CHECK(m.xi[0] == Complex(2.0, 0.0));
}

TEST_CASE("config errors") {
  RunConfig cfg;
  CHECK_THROWS_AS(apply_config_json(cfg, R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(cfg, R"({"tolerances": {"bogus": 1}})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(cfg, "{not json"), ConfigError);
  CHECK_THROWS_AS(parse_format("yaml"), ConfigError);
  RunConfig even;
  even.n_sites = 2;
  CHECK_THROWS_AS(resolve_params(even), ConfigError);
}

TEST_CASE("drawn couplings depend only on the seed") {
  RunConfig cfg;
  const ModelParams a = resolve_params(cfg), b = resolve_params(cfg);
  CHECK(a.kappa == b.kappa);
  CHECK(a.xi == b.xi);
  for (const Complex& k : a.kappa) {
    CHECK(k.imag() == 0.0);
    CHECK(k.real() >= 0.5);
    CHECK(k.real() <= 2.0);
  }
  cfg.seed = 8;
  CHECK(resolve_params(cfg).kappa != a.kappa);
}

TEST_CASE("suite record is reproducible") {
  RunConfig cfg;
  cfg.n_sites = 1;
  const std::string r1 = cmd_suite(cfg).render(OutputFormat::kJson);
  const std::string r2 = cmd_suite(cfg).render(OutputFormat::kJson);
  CHECK(r1 == r2);
  CHECK(r1.find("\"checks\"") != std::string::npos);
}
