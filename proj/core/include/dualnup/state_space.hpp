#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualnup/gaussian.hpp"
#include "dualnup/loss.hpp"

namespace dualnup {

/// Linear time-invariant chain: X_{n+1} = A X_n + B U_n, Y_n = C X_n for
/// n = 1..N, with X_1 drawn from the initial-state prior. Outputs are read
/// row-wise: y_{n,k} = c_k X_n with c_k the k-th row of C.
struct StateSpaceModel {
  Mat A;  // M x M
  Mat B;  // M x L
  Mat C;  // K x M
  int N = 1;

  int M() const { return static_cast<int>(A.rows()); }
  int L() const { return static_cast<int>(B.cols()); }
  int K() const { return static_cast<int>(C.rows()); }
  void validate() const;
};

struct Priors {
  Vec m_x1;
  Mat V_x1;
  Vec m_u;  // identical across steps
  Mat V_u;
  void validate(const StateSpaceModel& model) const;
};

enum class ConstraintTarget { Output, Input };

/// One scalar loss attached to output y_{n,k} or to input component u_{n,k};
/// n and k are 1-based. Variables without an entry are unconstrained.
struct Constraint {
  int n = 1;
  int k = 1;
  ConstraintTarget on = ConstraintTarget::Output;
  ScalarLoss loss;
};

struct InstanceMeta {
  std::uint64_t seed = 0;
  std::string generator_version;
};

struct ProblemInstance {
  StateSpaceModel model;
  Priors priors;
  std::vector<Constraint> constraints;
  InstanceMeta meta;

  void validate() const;
  bool has_output_constraints() const;
  bool has_input_constraints() const;
};

struct SimulationResult {
  Mat states;   // N x M, row n-1 holds X_n (X_1 = x1)
  Mat outputs;  // N x K
};

/// Deterministic rollout of the chain; u is N x L (row n-1 = u_n; u_N only
/// feeds the state after the last output and does not affect the result).
SimulationResult simulate(const StateSpaceModel& model, const Vec& x1, const Mat& u);

/// Quadratic prior cost of a candidate trajectory head:
/// 1/2 (x1-m)' Vx1^-1 (x1-m) + 1/2 sum_n (u_n-mu)' Vu^-1 (u_n-mu).
double objective_eval(const ProblemInstance& instance, const Vec& x1, const Mat& u);

struct FeasibilityViolation {
  int n = 0;
  int k = 0;
  ConstraintTarget on = ConstraintTarget::Output;
  double amount = 0.0;
};

struct FeasibilityReport {
  std::vector<FeasibilityViolation> violations;
  double max_violation = 0.0;
  bool feasible(double tol) const { return max_violation <= tol; }
};

/// Checks every constraint's anchor bounds against the supplied outputs
/// y (N x K) and inputs u (N x L); entries with
/// max(lower - value, value - upper) > tol are listed.
FeasibilityReport feasibility_check(const ProblemInstance& instance, const Mat& y, const Mat& u,
                                    double tol);

struct GeneratorDims {
  int M = 1, L = 1, K = 1, N = 1;
};

struct GeneratedInstance {
  ProblemInstance instance;
  Vec x1_witness;  // the trajectory whose outputs seeded the bounds;
  Mat u_witness;   // certifies that the feasible set is nonempty
};

inline constexpr const char* kGeneratorVersion = "boxgen-1";

/// Random box-constrained instance: A, B, C entries i.i.d. N(0, 1/N);
/// x1 ~ N(0, I/M) and u_n ~ N(0, I/L) are rolled out, a point y_breve is
/// drawn uniformly between 0.9*y and 1.1*y per output (endpoints in either
/// order so the band stays centered for negative outputs), and the interval
/// constraint [y_breve - 0.1|y_breve|, y_breve + 0.1|y_breve|] is attached
/// to every (n, k). Identical (dims, seed) give bit-identical instances.
GeneratedInstance generate_instance(const GeneratorDims& dims, std::uint64_t seed);

}  // namespace dualnup
