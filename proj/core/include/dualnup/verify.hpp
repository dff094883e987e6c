#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dualnup {
namespace verify {

struct PropertyResult {
  std::string name;
  long samples = 0;
  double worst = 0.0;  // worst residual observed
  double tol = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> results;
  bool pass() const;
};

/// Conjugacy/biconjugacy on a grid, proxy agreement, majorizer tangency,
/// deciding vs grid argmin, gamma escalation, beta=+inf limit consistency.
SuiteReport verify_losses();

/// Dualization round trips, recovery-identity consistency, scalar
/// observation vs dense conditioning, covariance symmetry.
SuiteReport verify_gauss();

/// KKT certificates on seeded instances, agreement between the active-set
/// iteration, exhaustive enumeration, and the projected-gradient fallback.
SuiteReport verify_oracle();

/// Smoother vs dense joint solves, solver/oracle agreement, fixed-point
/// stationarity, complementary slackness, input-side solver equivalence.
SuiteReport verify_solvers();

std::vector<SuiteReport> verify_suite(const std::string& name);  // "all" runs everything

void print_report(std::ostream& out, const SuiteReport& report);

}  // namespace verify
}  // namespace dualnup
