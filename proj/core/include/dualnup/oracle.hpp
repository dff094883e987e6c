#pragma once

#include <functional>
#include <vector>

#include "dualnup/state_space.hpp"

namespace dualnup {
namespace oracle {

enum class Side { Lower, Upper };

struct ActiveEntry {
  int n = 0;
  int k = 0;
  ConstraintTarget on = ConstraintTarget::Output;
  Side side = Side::Upper;
};

/// Exact reference solution with its KKT certificate. Multipliers are the
/// signed dual decisions: >= 0 for active upper bounds, <= 0 for active
/// lower bounds; complementary slackness holds exactly (inactive
/// constraints carry no multiplier).
struct OracleSolution {
  Vec x1;
  Mat u;  // N x L
  Mat y;  // N x K
  double J = 0.0;
  std::vector<ActiveEntry> active;
  Vec multipliers;            // aligned with `active`
  double stationarity = 0.0;  // max-norm KKT residual
};

struct QpOptions {
  int max_constraints = 20;  // enumeration bound
  double feas_tol = 1e-10;
  double sign_tol = 1e-10;
};

/// Exact global optimum of min J(x1, u) subject to the instance's hard
/// constraints, via active-set iteration over {inactive, at-lower,
/// at-upper} with dense pivoted KKT solves, residual refinement, and a full
/// KKT certificate on the accepted candidate. Hard (indicator) constraints
/// only; throws "enumeration bound exceeded" past opts.max_constraints and
/// "infeasible" when no certified candidate exists.
OracleSolution active_set_qp(const ProblemInstance& instance, const QpOptions& opts = {});

/// Literal enumeration of all 3^m activity patterns (m <= 12); used to
/// cross-check the active-set iteration on small instances.
OracleSolution enumerate_qp(const ProblemInstance& instance, const QpOptions& opts = {});

struct ProjectedGradientResult {
  Vec x1;
  Mat u;
  double J = 0.0;
  long steps_taken = 0;
};

/// Long-run projected gradient on the nonnegative-multiplier dual of the
/// same QP, step 1/L with L a largest-eigenvalue bound of the dual Hessian.
/// Independent of the active-set path; used as a consistency check.
ProjectedGradientResult projected_gradient(const ProblemInstance& instance,
                                           long max_steps = 1000000);

/// Grid minimizer of a scalar objective; test oracle for the scalar
/// decision rules. Throws if the objective is non-finite on the whole grid.
double scalar_grid_argmin(const std::function<double(double)>& objective, double lo, double hi,
                          double step);

}  // namespace oracle
}  // namespace dualnup
