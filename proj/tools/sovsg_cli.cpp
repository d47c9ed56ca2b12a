// Batch front end: one subcommand per pipeline stage plus the acceptance suite.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "sovsg/commands.hpp"
#include "sovsg/errors.hpp"

namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> p, p_prime, n_sites;
  std::map<std::string, double> tol;
  std::string out;
  std::string format;
  bool ab_initio = false;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON configuration file");
  sub->add_option("--seed", o.seed, "random seed (all randomness derives from it)");
  sub->add_option("--p", o.p, "root-of-unity order p (odd, >= 3)");
  sub->add_option("--p-prime", o.p_prime, "numerator p' (even, coprime to p)");
  sub->add_option("--n-sites", o.n_sites, "number of sites N (odd)");
  sub->add_option("--out", o.out, "output path (default stdout)");
  sub->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  static const sovsg::Tolerances defaults;
  for (const auto& [name, value] : defaults.values()) {
    auto* opt = sub->add_option_function<double>(
        "--tol." + name, [&o, n = name](double v) { o.tol[n] = v; }, "tolerance (default " + fmt_g(value) + ")");
    opt->group("Tolerances");
  }
}

sovsg::RunConfig build_config(const Overrides& o) {
  sovsg::RunConfig cfg = o.config.empty() ? sovsg::RunConfig{} : sovsg::load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.p) cfg.p = *o.p;
  if (o.p_prime) cfg.p_prime = *o.p_prime;
  if (o.n_sites) {
    // a different size invalidates couplings given for the old one
    if (cfg.n_sites != *o.n_sites) cfg.kappa.reset(), cfg.xi.reset();
    cfg.n_sites = *o.n_sites;
  }
  for (const auto& [name, v] : o.tol) cfg.tol.set(name, v);
  if (!o.out.empty()) cfg.out = o.out;
  if (!o.format.empty()) cfg.format = sovsg::parse_format(o.format);
  cfg.ab_initio = cfg.ab_initio || o.ab_initio;
  return cfg;
}

void apply_thread_cap() {
  if (const char* env = std::getenv("SOVSG_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }
}

int emit(const sovsg::Report& rep, const sovsg::RunConfig& cfg) {
  const std::string text = rep.render(cfg.format);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw sovsg::ConfigError("cannot write '" + cfg.out + "'");
    f << text;
  }
  return rep.passed() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separation of variables for the lattice sine-Gordon model at a root of unity"};
  app.require_subcommand(1);
  Overrides o;

  using Cmd = sovsg::Report (*)(const sovsg::RunConfig&);
  struct Entry {
    const char* name;
    const char* help;
    Cmd fn;
  };
  const Entry simple[] = {
      {"verify-ybe", "Weyl relations, RLL, commuting T(lambda) and B(lambda)", sovsg::cmd_verify_ybe},
      {"averages", "central averages, zeros of cal_B and the grids", sovsg::cmd_averages},
      {"sov-basis", "labelled B-eigenbasis and its measure", sovsg::cmd_sov_basis},
      {"spectrum", "transfer spectrum and the separate systems", sovsg::cmd_spectrum},
      {"qfunctions", "Q-functions, TQ equation, SOV eigenstates", sovsg::cmd_qfunctions},
      {"formfactors", "determinant form factors against direct matrix elements", sovsg::cmd_formfactors},
  };
  std::map<CLI::App*, Cmd> dispatch;
  for (const auto& [name, help, fn] : simple) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    dispatch[sub] = fn;
  }
  CLI::App* suite = app.add_subcommand("suite", "run every acceptance criterion");
  add_common(suite, o);
  suite->add_flag("--ab-initio", o.ab_initio, "also solve the separate systems by Newton iteration");
  for (auto& [sub, _] : dispatch) sub->add_flag("--ab-initio", o.ab_initio, "spectrum: Newton on det D_n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  apply_thread_cap();
  try {
    const sovsg::RunConfig cfg = build_config(o);
    sovsg::resolve_params(cfg);  // validate before any computation
    if (suite->parsed()) {
      std::vector<sovsg::CriterionResult> details;
      const sovsg::Report rep = sovsg::cmd_suite(cfg, &details);
      for (const auto& d : details)
        std::cerr << "criterion " << d.id << " " << (d.passed() ? "PASS" : "FAIL") << " (" << d.seconds << " s)\n";
      return emit(rep, cfg);
    }
    for (const auto& [sub, fn] : dispatch)
      if (sub->parsed()) return emit(fn(cfg), cfg);
  } catch (const sovsg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  }
  return 0;
}
