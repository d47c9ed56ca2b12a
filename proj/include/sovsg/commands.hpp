#ifndef SOVSG_COMMANDS_HPP
#define SOVSG_COMMANDS_HPP

#include <string>
#include <vector>

#include "sovsg/pipeline.hpp"
#include "sovsg/report.hpp"

namespace sovsg {

Report cmd_verify_ybe(const RunConfig& cfg);
Report cmd_averages(const RunConfig& cfg);
Report cmd_sov_basis(const RunConfig& cfg);
Report cmd_spectrum(const RunConfig& cfg);
Report cmd_qfunctions(const RunConfig& cfg);
Report cmd_formfactors(const RunConfig& cfg);

struct CriterionResult {
  int id = 0;
  std::string title;
  double seconds = 0.0;
  double time_limit = 0.0;
  Report report{"criterion"};

  bool within_time() const { return seconds < time_limit; }
  bool passed() const { return report.passed() && within_time(); }
};

// Criteria 1..9 on the configured instance, or 1..4 when `structural_only`.
std::vector<CriterionResult> run_acceptance(const RunConfig& cfg, bool structural_only = false);

// Suite report: one summary row per criterion plus every check, prefixed.
// Timings are left out so that the record is reproducible.
Report cmd_suite(const RunConfig& cfg, std::vector<CriterionResult>* details = nullptr);

}  // namespace sovsg

#endif  // SOVSG_COMMANDS_HPP
