#include <doctest.h>

#include "dualnup/instance_io.hpp"
#include "dualnup/rng.hpp"
#include "dualnup/state_space.hpp"

using namespace dualnup;

namespace {

ProblemInstance scalar_instance(int N) {
  ProblemInstance inst;
  inst.model.A = Mat::Constant(1, 1, 1.0);
  inst.model.B = Mat::Constant(1, 1, 1.0);
  inst.model.C = Mat::Constant(1, 1, 1.0);
  inst.model.N = N;
  inst.priors.m_x1 = Vec::Zero(1);
  inst.priors.V_x1 = Mat::Identity(1, 1);
  inst.priors.m_u = Vec::Zero(1);
  inst.priors.V_u = Mat::Identity(1, 1);
  return inst;
}

}  // namespace

TEST_CASE("simulate: frozen, hand-rolled, and memoryless dynamics") {
  // Frozen dynamics: constant state.
  {
    ProblemInstance inst = scalar_instance(4);
    inst.model.B = Mat::Constant(1, 1, 0.0);
    Vec x1 = Vec::Constant(1, 3.0);
    Mat u = Mat::Ones(4, 1);
    const auto sim = simulate(inst.model, x1, u);
    for (int n = 0; n < 4; ++n) {
      CHECK(sim.states(n, 0) == doctest::Approx(3.0));
      CHECK(sim.outputs(n, 0) == doctest::Approx(3.0));
    }
  }
  // Hand rollout: x(n+1) = x(n) + u(n) from x = 1.
  {
    ProblemInstance inst = scalar_instance(3);
    Vec x1 = Vec::Constant(1, 1.0);
    Mat u(3, 1);
    u << 1.0, 1.0, 0.0;
    const auto sim = simulate(inst.model, x1, u);
    CHECK(sim.states(0, 0) == doctest::Approx(1.0));
    CHECK(sim.states(1, 0) == doctest::Approx(2.0));
    CHECK(sim.states(2, 0) == doctest::Approx(3.0));
    CHECK(sim.outputs(0, 0) == doctest::Approx(1.0));
    CHECK(sim.outputs(1, 0) == doctest::Approx(2.0));
    CHECK(sim.outputs(2, 0) == doctest::Approx(3.0));
  }
  // Memoryless: A = 0 forgets the initial state after one step.
  {
    ProblemInstance inst = scalar_instance(3);
    inst.model.A = Mat::Zero(1, 1);
    Mat u(3, 1);
    u << 5.0, -2.0, 0.0;
    const auto sim = simulate(inst.model, Vec::Constant(1, 99.0), u);
    CHECK(sim.states(1, 0) == doctest::Approx(5.0));
    CHECK(sim.states(2, 0) == doctest::Approx(-2.0));
  }
}

TEST_CASE("simulate is linear in (x1, u)") {
  SplitMix64 rng(7);
  const auto gen = generate_instance({3, 2, 2, 5}, 11);
  const auto& model = gen.instance.model;
  Vec x1a(3), x1b(3);
  Mat ua(5, 2), ub(5, 2);
  for (int i = 0; i < 3; ++i) {
    x1a(i) = rng.next_normal();
    x1b(i) = rng.next_normal();
  }
  for (int n = 0; n < 5; ++n)
    for (int l = 0; l < 2; ++l) {
      ua(n, l) = rng.next_normal();
      ub(n, l) = rng.next_normal();
    }
  const Mat sum = simulate(model, x1a + x1b, ua + ub).outputs;
  const Mat parts = simulate(model, x1a, ua).outputs + simulate(model, x1b, ub).outputs;
  CHECK((sum - parts).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("objective evaluation") {
  ProblemInstance inst = scalar_instance(2);
  CHECK(objective_eval(inst, Vec::Zero(1), Mat::Zero(2, 1)) == doctest::Approx(0.0));

  ProblemInstance inst4 = scalar_instance(1);
  inst4.model.A = Mat::Identity(4, 4);
  inst4.model.B = Mat::Ones(4, 2);
  inst4.model.C = Mat::Ones(1, 4);
  inst4.priors.m_x1 = Vec::Zero(4);
  inst4.priors.V_x1 = Mat::Identity(4, 4) / 4.0;
  inst4.priors.m_u = Vec::Zero(2);
  inst4.priors.V_u = Mat::Identity(2, 2) / 2.0;
  Vec e1 = Vec::Zero(4);
  e1(0) = 1.0;
  CHECK(objective_eval(inst4, e1, Mat::Zero(1, 2)) == doctest::Approx(2.0));
  Mat u = Mat::Zero(1, 2);
  u(0, 0) = 1.0;
  u(0, 1) = 1.0;
  CHECK(objective_eval(inst4, Vec::Zero(4), u) == doctest::Approx(2.0));

  inst4.priors.V_x1(0, 0) = 0.0;
  CHECK_THROWS_WITH_AS(objective_eval(inst4, e1, Mat::Zero(1, 2)), "singular prior covariance",
                       std::runtime_error);
}

TEST_CASE("feasibility report") {
  ProblemInstance inst = scalar_instance(2);
  inst.constraints.push_back({1, 1, ConstraintTarget::Output, ScalarLoss::interval(0.0, 1.0)});
  inst.constraints.push_back({2, 1, ConstraintTarget::Output, ScalarLoss::interval(0.0, 1.0)});

  Mat y(2, 1), u = Mat::Zero(2, 1);
  y << 1.0, 0.0;  // exactly at the bounds
  auto report = feasibility_check(inst, y, u, 1e-8);
  CHECK(report.violations.empty());
  CHECK(report.max_violation == doctest::Approx(0.0));

  y(0, 0) = 1.0 + 1e-3;
  report = feasibility_check(inst, y, u, 1e-8);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].n == 1);
  CHECK(report.violations[0].amount == doctest::Approx(1e-3));
}

TEST_CASE("generator: determinism, feasibility, band construction") {
  const auto g1 = generate_instance({4, 2, 2, 8}, 5);
  const auto g2 = generate_instance({4, 2, 2, 8}, 5);
  CHECK(instance_to_json(g1.instance) == instance_to_json(g2.instance));

  const auto g3 = generate_instance({4, 2, 2, 8}, 6);
  CHECK(instance_to_json(g1.instance) != instance_to_json(g3.instance));

  for (const auto& c : g1.instance.constraints) CHECK(c.loss.a <= c.loss.b);

  // The generating trajectory satisfies its own bounds.
  const auto sim = simulate(g1.instance.model, g1.x1_witness, g1.u_witness);
  const auto report = feasibility_check(g1.instance, sim.outputs, g1.u_witness, 1e-9);
  CHECK(report.violations.empty());
}

TEST_CASE("generator accepts the large benchmark dimensions") {
  const auto gen = generate_instance({40, 20, 20, 1000}, 1);
  CHECK(gen.instance.constraints.size() == 20000);
  gen.instance.validate();
}
