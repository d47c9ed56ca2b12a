#ifndef SOVSG_REPORT_HPP
#define SOVSG_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sovsg/config.hpp"

namespace sovsg {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);

enum class CheckKind { kAtMost, kAtLeast, kFlag };

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::kAtMost;
  bool pass = false;
  bool soft = false;  // reported, never fails the run
};

// One self-describing record per command: parameters, checks, data tables.
class Report {
 public:
  explicit Report(std::string command);

  void set_params(const ModelParams& params, std::uint64_t seed);

  // pass iff value <= tolerance
  void at_most(std::string name, double value, double tolerance, bool soft = false);
  // pass iff value >= threshold
  void at_least(std::string name, double value, double threshold, bool soft = false);
  // boolean condition; the tolerance column is unused
  void flag(std::string name, bool ok, bool soft = false);

  Json& data() { return data_; }
  const std::vector<Check>& checks() const { return checks_; }
  bool passed() const;
  std::vector<std::string> warnings() const;

  Json to_json() const;
  std::string render(OutputFormat format) const;

 private:
  std::string command_;
  Json params_;
  std::vector<Check> checks_;
  Json data_ = Json::object();
};

}  // namespace sovsg

#endif  // SOVSG_REPORT_HPP
