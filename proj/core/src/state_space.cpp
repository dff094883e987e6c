#include "dualnup/state_space.hpp"

#include <set>
#include <stdexcept>

namespace dualnup {

void StateSpaceModel::validate() const {
  if (N < 1) throw std::invalid_argument("model: horizon N must be >= 1");
  if (A.rows() != A.cols()) throw std::invalid_argument("model: A must be square");
  if (B.rows() != A.rows()) throw std::invalid_argument("model: B row count must match A");
  if (C.cols() != A.rows()) throw std::invalid_argument("model: C column count must match A");
  if (B.cols() < 1 || C.rows() < 1) throw std::invalid_argument("model: empty input or output");
}

void Priors::validate(const StateSpaceModel& model) const {
  if (m_x1.size() != model.M() || V_x1.rows() != model.M() || V_x1.cols() != model.M())
    throw std::invalid_argument("priors: initial-state prior dimension mismatch");
  if (m_u.size() != model.L() || V_u.rows() != model.L() || V_u.cols() != model.L())
    throw std::invalid_argument("priors: input prior dimension mismatch");
}

void ProblemInstance::validate() const {
  model.validate();
  priors.validate(model);
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& c : constraints) {
    c.loss.validate();
    const int limit = c.on == ConstraintTarget::Output ? model.K() : model.L();
    if (c.n < 1 || c.n > model.N || c.k < 1 || c.k > limit)
      throw std::invalid_argument("instance: constraint index out of range");
    if (!seen.insert({c.n, c.k, static_cast<int>(c.on)}).second)
      throw std::invalid_argument("instance: duplicate constraint entry");
  }
}

bool ProblemInstance::has_output_constraints() const {
  for (const auto& c : constraints)
    if (c.on == ConstraintTarget::Output) return true;
  return false;
}

bool ProblemInstance::has_input_constraints() const {
  for (const auto& c : constraints)
    if (c.on == ConstraintTarget::Input) return true;
  return false;
}

SimulationResult simulate(const StateSpaceModel& model, const Vec& x1, const Mat& u) {
  model.validate();
  if (x1.size() != model.M()) throw std::invalid_argument("simulate: x1 dimension mismatch");
  if (u.rows() != model.N || u.cols() != model.L())
    throw std::invalid_argument("simulate: input trajectory must be N x L");

  SimulationResult out;
  out.states.resize(model.N, model.M());
  out.outputs.resize(model.N, model.K());
  Vec x = x1;
  for (int n = 0; n < model.N; ++n) {
    out.states.row(n) = x.transpose();
    out.outputs.row(n) = (model.C * x).transpose();
    x = model.A * x + model.B * u.row(n).transpose();
  }
  return out;
}

namespace {

// Quadratic form 1/2 d' V^-1 d with an elementwise fast path for diagonal V.
double half_mahalanobis(const Vec& d, const Mat& V, const char* what) {
  if (V.isDiagonal(0.0)) {
    double acc = 0.0;
    for (int i = 0; i < d.size(); ++i) {
      const double v = V(i, i);
      if (!(v > 0.0)) throw std::runtime_error(what);
      acc += d(i) * d(i) / v;
    }
    return 0.5 * acc;
  }
  Eigen::LDLT<Mat> ldlt(V);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 0.0)
    throw std::runtime_error(what);
  return 0.5 * d.dot(ldlt.solve(d));
}

}  // namespace

double objective_eval(const ProblemInstance& instance, const Vec& x1, const Mat& u) {
  const auto& model = instance.model;
  if (x1.size() != model.M() || u.rows() != model.N || u.cols() != model.L())
    throw std::invalid_argument("objective_eval: dimension mismatch");

  double J = half_mahalanobis(x1 - instance.priors.m_x1, instance.priors.V_x1,
                              "singular prior covariance");
  for (int n = 0; n < model.N; ++n)
    J += half_mahalanobis(u.row(n).transpose() - instance.priors.m_u, instance.priors.V_u,
                          "singular prior covariance");
  return J;
}

FeasibilityReport feasibility_check(const ProblemInstance& instance, const Mat& y, const Mat& u,
                                    double tol) {
  const auto& model = instance.model;
  if (y.rows() != model.N || y.cols() != model.K() || u.rows() != model.N ||
      u.cols() != model.L())
    throw std::invalid_argument("feasibility_check: dimension mismatch");

  FeasibilityReport report;
  for (const auto& c : instance.constraints) {
    const double value =
        c.on == ConstraintTarget::Output ? y(c.n - 1, c.k - 1) : u(c.n - 1, c.k - 1);
    const double lo = c.loss.lower_bound();
    const double hi = c.loss.upper_bound();
    double amount = 0.0;
    if (std::isfinite(lo)) amount = std::max(amount, lo - value);
    if (std::isfinite(hi)) amount = std::max(amount, value - hi);
    report.max_violation = std::max(report.max_violation, amount);
    if (amount > tol) report.violations.push_back({c.n, c.k, c.on, amount});
  }
  return report;
}

}  // namespace dualnup
