#pragma once

#include <string>
#include <vector>

#include "dualnup/state_space.hpp"

namespace dualnup {

struct SolverConfig {
  int max_iters = 1000;
  double tol = 1e-8;     // relative objective change threshold
  double beta = 1e3;     // hinge slope substituted for hard losses on the primal side
  enum class GammaMode { Finite, Infinite } gamma_mode = GammaMode::Infinite;
  bool record_history = true;

  void validate() const;
};

struct IterationRecord {
  int iter = 0;  // 1-based outer iteration
  double J = 0.0;
  double max_violation = 0.0;
  double elapsed_s = 0.0;  // cumulative wall clock since solve start
};

struct IterationHistory {
  std::vector<IterationRecord> records;
};

struct Solution {
  Vec x1_hat;
  Mat u_hat;        // N x L
  Mat y_hat;        // N x K, recovered output estimates
  Mat z_tilde_hat;  // N x K, dual decisions for output constraints (0 elsewhere)
  Mat u_tilde_hat;  // N x L, dual decisions for input constraints (0 elsewhere)
  double J = 0.0;
  bool converged = false;
  int iters = 0;
  IterationHistory history;
  bool stuck_at_boundary = false;  // a primal refresh produced a zero-variance message
  std::string status;
};

/// Iterated forward filtering backward dual deciding. Forward pass is a
/// standard Kalman filter with per-output sequential scalar updates; the
/// backward pass decides the convex-dual variable of every constrained
/// output (and input component) in closed form and refreshes the dual
/// backward messages. No matrix inversion anywhere in the sweeps: every
/// gain is a scalar reciprocal and every covariance update is rank one.
Solution solve_iffbdd(const ProblemInstance& instance, const SolverConfig& config);

/// Iteratively reweighted linear-Gaussian estimation: alternate an exact
/// linear-Gaussian smoothing step with closed-form primal reflection
/// updates of the hinge messages. Hard constraints are smoothed with a
/// config.beta hinge; output-side constraints only.
Solution solve_irlge(const ProblemInstance& instance, const SolverConfig& config);

/// Iterated backward filtering forward deciding: backward Gaussian
/// max-product sweep with the current quadratic surrogates, then a forward
/// pass deciding each input component exactly against its true loss.
/// Input-side constraints only; output constraints are rejected.
Solution solve_ibffd(const ProblemInstance& instance, const SolverConfig& config);

Solution solve(const std::string& solver_name, const ProblemInstance& instance,
               const SolverConfig& config);

struct SmootherResult {
  Vec x1;
  Mat u;  // N x L
  Mat y;  // N x K
};

/// Joint MAP of the linear-Gaussian model obtained by attaching the given
/// backward Gaussian messages (V = +inf sentinel means none) to the
/// outputs. Same forward/backward kernels as solve_iffbdd with the dual
/// decision replaced by its Gaussian closed form.
SmootherResult smoother(const ProblemInstance& instance,
                        const std::vector<std::vector<ScalarGaussian>>& y_bwd);

FeasibilityReport feasibility_check(const ProblemInstance& instance, const Solution& solution,
                                    double tol);

}  // namespace dualnup
