// Acceptance gate: one test case per criterion, each printing its own
// pass/fail line.  Every criterion is asserted; a red case here means the
// corresponding guarantee does not hold at the checked tolerances.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include <bergman/verify.hpp>

using bergman::verify::CriterionResult;
using bergman::verify::VerifyOptions;

namespace {

VerifyOptions options() {
  VerifyOptions o;
  o.truncation = 60;
  o.sandwich_samples = 10000;
  o.ratio_samples = 800;
  o.seed = 20240817;
  o.jobs = 0;
  return o;
}

void report(const CriterionResult& r) {
  std::printf("criterion %d: %s - %s (%s)\n", r.id, r.pass ? "PASS" : "FAIL",
              r.name.c_str(), r.details.c_str());
  std::fflush(stdout);
  INFO(r.details);
  CHECK(r.pass);
}

}  // namespace

TEST_CASE("criterion 1: product model closed forms") {
  report(bergman::verify::check_closed_forms(options()));
}

TEST_CASE("criterion 2: reciprocity identities at random points") {
  report(bergman::verify::check_reciprocity(options()));
}

TEST_CASE("criterion 3: transformation identities") {
  report(bergman::verify::check_transformation(options()));
}

TEST_CASE("criterion 4: least norm integrals at the origin") {
  report(bergman::verify::check_extremal_values(options()));
}

TEST_CASE("criterion 5: stream limit diagnostics and ratio lower bounds") {
  report(bergman::verify::check_limit_diagnostics(options()));
}

TEST_CASE("criterion 6: scaled region sandwich inclusions") {
  report(bergman::verify::check_inclusions(options()));
}

TEST_CASE("criterion 7: normalized ratio brackets") {
  report(bergman::verify::check_ratio_brackets(options()));
}

TEST_CASE("criterion 8: two scale quotient dichotomy") {
  report(bergman::verify::check_counterexample(options()));
}

TEST_CASE("criterion 9: deterministic reports") {
  report(bergman::verify::check_determinism(options()));
}
