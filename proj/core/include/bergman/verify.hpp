#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bergman::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
};

struct VerifyOptions {
  int truncation = 60;
  int sandwich_samples = 10000;  // inclusion check, dedicated criterion
  int ratio_samples = 800;       // per-t certification inside ratio sweeps
  std::uint64_t seed = 20240817;
  int jobs = 0;                  // 0 = hardware concurrency
  std::string out_dir;           // when set, CSV/SVG artifacts are written here
};

CriterionResult check_closed_forms(const VerifyOptions& o);        // 1
CriterionResult check_reciprocity(const VerifyOptions& o);         // 2
CriterionResult check_transformation(const VerifyOptions& o);      // 3
CriterionResult check_extremal_values(const VerifyOptions& o);     // 4
CriterionResult check_limit_diagnostics(const VerifyOptions& o);   // 5
CriterionResult check_inclusions(const VerifyOptions& o);          // 6
CriterionResult check_ratio_brackets(const VerifyOptions& o);      // 7
CriterionResult check_counterexample(const VerifyOptions& o);      // 8
CriterionResult check_determinism(const VerifyOptions& o);         // 9

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

/// "criterion N: PASS name (details)" lines plus a final verdict line.
std::string format_results(const std::vector<CriterionResult>& results);

}  // namespace bergman::verify
