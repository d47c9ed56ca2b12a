#include "sovsg/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sovsg {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string scalar_text(const Json& v) {
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_value(std::ostringstream& out, const std::string& key, const Json& v) {
  const bool table = v.is_array() && !v.empty() && v.front().is_object();
  if (!table) {
    out << key << " = " << scalar_text(v) << "\n";
    return;
  }
  out << key << ":\n";
  std::vector<std::string> cols;
  for (const auto& [k, _] : v.front().items()) cols.push_back(k);
  out << " ";
  for (const auto& c : cols) out << " " << c;
  out << "\n";
  for (const auto& row : v) {
    out << " ";
    for (const auto& c : cols) out << " " << (row.contains(c) ? scalar_text(row[c]) : "-");
    out << "\n";
  }
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    a.push_back(std::move(row));
  }
  return a;
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::set_params(const ModelParams& params, std::uint64_t seed) {
  Json kappa = Json::array();
  Json xi = Json::array();
  for (const Complex k : params.kappa) kappa.push_back(sovsg::to_json(k));
  for (const Complex x : params.xi) xi.push_back(sovsg::to_json(x));
  params_ = Json{{"N", params.n_sites},     {"p", params.p},       {"p_prime", params.p_prime},
                 {"beta_sq", params.beta_sq}, {"q", sovsg::to_json(params.q)}, {"kappa", kappa},
                 {"xi", xi},                {"seed", seed}};
}

void Report::at_most(std::string name, double value, double tolerance, bool soft) {
  checks_.push_back({std::move(name), value, tolerance, CheckKind::kAtMost, value <= tolerance, soft});
}

void Report::at_least(std::string name, double value, double threshold, bool soft) {
  checks_.push_back({std::move(name), value, threshold, CheckKind::kAtLeast, value >= threshold, soft});
}

void Report::flag(std::string name, bool ok, bool soft) {
  checks_.push_back({std::move(name), ok ? 1.0 : 0.0, 1.0, CheckKind::kFlag, ok, soft});
}

bool Report::passed() const {
  for (const auto& c : checks_)
    if (!c.pass && !c.soft) return false;
  return true;
}

std::vector<std::string> Report::warnings() const {
  std::vector<std::string> out;
  for (const auto& c : checks_)
    if (!c.pass && c.soft) out.push_back(c.name);
  return out;
}

Json Report::to_json() const {
  Json checks = Json::array();
  for (const auto& c : checks_) {
    Json row;
    row["check"] = c.name;
    if (c.kind == CheckKind::kFlag) {
      row["value"] = c.pass;
    } else {
      row["value"] = std::isfinite(c.value) ? Json(c.value) : Json(fmt(c.value));
      row["tolerance"] = c.tolerance;
      row["rule"] = c.kind == CheckKind::kAtMost ? "<=" : ">=";
    }
    row["pass"] = c.pass;
    if (c.soft) row["soft"] = true;
    checks.push_back(std::move(row));
  }
  Json out;
  out["command"] = command_;
  out["params"] = params_;
  out["checks"] = std::move(checks);
  out["data"] = data_;
  out["passed"] = passed();
  out["warnings"] = warnings();
  return out;
}

std::string Report::render(OutputFormat format) const {
  if (format == OutputFormat::kJson) return to_json().dump(2) + "\n";

  std::ostringstream out;
  out << "# " << command_ << "\n";
  if (!params_.is_null())
    for (const auto& [k, v] : params_.items()) out << k << " = " << v.dump() << "\n";
  if (!checks_.empty()) {
    out << "\ncheck value tolerance result\n";
    for (const auto& c : checks_) {
      const char* verdict = c.pass ? "PASS" : (c.soft ? "WARN" : "FAIL");
      if (c.kind == CheckKind::kFlag)
        out << c.name << " " << (c.pass ? "true" : "false") << " - " << verdict << "\n";
      else
        out << c.name << " " << fmt(c.value) << " " << (c.kind == CheckKind::kAtMost ? "<=" : ">=")
            << fmt(c.tolerance) << " " << verdict << "\n";
    }
  }
  if (!data_.empty()) {
    out << "\n";
    for (const auto& [k, v] : data_.items()) render_value(out, k, v);
  }
  out << "\nresult " << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace sovsg
