#include <doctest.h>

#include "dualnup/loss.hpp"
#include "dualnup/oracle.hpp"
#include "dualnup/verify.hpp"

using namespace dualnup;

namespace {

// Minimize 1/2 x^2 + 1/2 (u1^2 + u2^2) subject to x + u1 >= 2: the output
// at step 2 of a scalar unit chain reads x1 + u1.
ProblemInstance hand_instance() {
  ProblemInstance inst;
  inst.model.A = Mat::Constant(1, 1, 1.0);
  inst.model.B = Mat::Constant(1, 1, 1.0);
  inst.model.C = Mat::Constant(1, 1, 1.0);
  inst.model.N = 2;
  inst.priors.m_x1 = Vec::Zero(1);
  inst.priors.V_x1 = Mat::Identity(1, 1);
  inst.priors.m_u = Vec::Zero(1);
  inst.priors.V_u = Mat::Identity(1, 1);
  inst.constraints.push_back({2, 1, ConstraintTarget::Output, ScalarLoss::geq(2.0)});
  return inst;
}

}  // namespace

TEST_CASE("unconstrained problem returns the prior optimum") {
  ProblemInstance inst = hand_instance();
  inst.constraints.clear();
  const auto sol = oracle::active_set_qp(inst);
  CHECK(sol.J == doctest::Approx(0.0));
  CHECK(sol.x1.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(sol.u.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(sol.active.empty());
}

TEST_CASE("hand KKT instance") {
  const auto sol = oracle::active_set_qp(hand_instance());
  CHECK(sol.x1(0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.u(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.u(1, 0) == doctest::Approx(0.0));
  CHECK(sol.J == doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(sol.active.size() == 1);
  CHECK(sol.active[0].side == oracle::Side::Lower);
  CHECK(sol.multipliers(0) == doctest::Approx(-1.0));  // lower-bound multipliers are <= 0
}

TEST_CASE("oracle self-consistency on a seeded instance") {
  const auto gen = generate_instance({4, 2, 2, 8}, 3);
  const auto sol = oracle::active_set_qp(gen.instance);
  const auto report = feasibility_check(gen.instance, sol.y, sol.u, 1e-10);
  CHECK(report.violations.empty());
  CHECK(sol.stationarity <= 1e-9);
}

TEST_CASE("enumeration bound and infeasible detection") {
  const auto gen = generate_instance({2, 1, 2, 12}, 1);  // 24 constraints
  CHECK_THROWS_WITH_AS(oracle::active_set_qp(gen.instance), "oracle: enumeration bound exceeded",
                       std::runtime_error);

  // x1 >= 5 and u1 in [0,1] force y(2,1) = x1 + u1 >= 5, contradicting
  // y(2,1) <= 0.
  ProblemInstance infeasible = hand_instance();
  infeasible.constraints.clear();
  infeasible.constraints.push_back({2, 1, ConstraintTarget::Output, ScalarLoss::leq(0.0)});
  infeasible.constraints.push_back({1, 1, ConstraintTarget::Output, ScalarLoss::geq(5.0)});
  infeasible.constraints.push_back({1, 1, ConstraintTarget::Input, ScalarLoss::interval(0.0, 1.0)});
  CHECK_THROWS_AS(oracle::enumerate_qp(infeasible), std::runtime_error);
}

TEST_CASE("soft losses are rejected") {
  ProblemInstance inst = hand_instance();
  inst.constraints[0].loss = ScalarLoss::hinge_below(2.0, 10.0);
  CHECK_THROWS_AS(oracle::active_set_qp(inst), std::invalid_argument);
}

TEST_CASE("scalar grid argmin") {
  const double quad = oracle::scalar_grid_argmin(
      [](double z) { return 0.5 * (z - 1.0) * (z - 1.0); }, -5.0, 5.0, 1e-3);
  CHECK(quad == doctest::Approx(1.0).epsilon(2e-3));

  // Matches the closed-form dual decision for the one-sided case.
  const ScalarLoss leq = ScalarLoss::leq(1.0);
  const double grid = oracle::scalar_grid_argmin(
      [&](double zt) { return (zt - 2.0) * (zt - 2.0) / 2.0 + proxy_eval(leq, zt, 3.0); },
      -5.0, 5.0, 1e-3);
  CHECK(grid == doctest::Approx(dual_decide(leq, 2.0, 1.0, 3.0)).epsilon(2e-3));

  // Grid sup of the conjugate definition for L1 at 0.5.
  const ScalarLoss l1 = ScalarLoss::l1(0.0, 1.0);
  const double arg = oracle::scalar_grid_argmin(
      [&](double z) { return primal_eval(l1, z) - 0.5 * z; }, -50.0, 50.0, 1e-3);
  const double sup = 0.5 * arg - primal_eval(l1, arg);
  CHECK(sup == doctest::Approx(0.0).epsilon(2e-3));

  CHECK_THROWS_AS(
      oracle::scalar_grid_argmin([](double) { return kInf; }, -1.0, 1.0, 0.1),
      std::runtime_error);
}

TEST_CASE("oracle property suite") {
  const auto report = verify::verify_oracle();
  for (const auto& r : report.results) {
    INFO(r.name, " worst=", r.worst, " tol=", r.tol);
    CHECK(r.pass);
  }
}
