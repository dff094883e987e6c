#include "dualnup/solvers.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace dualnup {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double relative_change(double J, double J_prev) {
  return std::abs(J - J_prev) / std::max(1.0, std::abs(J));
}

ScalarGaussian product(const ScalarGaussian& g1, const ScalarGaussian& g2) {
  if (g1.V == 0.0) return g1;
  if (g2.V == 0.0) return g2;
  if (g1.V == kInf) return g2;
  if (g2.V == kInf) return g1;
  const double W = 1.0 / g1.V + 1.0 / g2.V;
  return ScalarGaussian{(g1.m / g1.V + g2.m / g2.V) / W, 1.0 / W};
}

// Weakly informative starting message: anchor (midpoint for two-sided
// kinds), variance from the half-width but at least 1.
ScalarGaussian initial_message(const ScalarLoss& loss) {
  switch (loss.kind) {
    case LossKind::L1:
    case LossKind::HingeBelow:
    case LossKind::HalfSpaceGeq:
      return ScalarGaussian{loss.a, 1.0};
    case LossKind::HingeAbove:
    case LossKind::HalfSpaceLeq:
      return ScalarGaussian{loss.b, 1.0};
    case LossKind::Vapnik:
    case LossKind::Interval: {
      const double half = 0.5 * (loss.b - loss.a);
      return ScalarGaussian{0.5 * (loss.a + loss.b), std::max(1.0, half * half)};
    }
  }
  return ScalarGaussian{0.0, 1.0};
}

double initial_gamma(const ScalarLoss& loss, SolverConfig::GammaMode mode) {
  if (loss.kind == LossKind::Interval || loss.kind == LossKind::Vapnik)
    return std::max(0.5 * (loss.b - loss.a), 1e-12);
  if (loss.is_hard())  // one-sided hard constraint
    return mode == SolverConfig::GammaMode::Infinite ? kInf : 1.0;
  return 1.0;
}

// Hinge surrogates used by the primal-side solvers; hard kinds get a
// finite-slope hinge with the configured beta.
std::vector<ScalarLoss> primal_surrogates(const ScalarLoss& loss, double beta_cfg,
                                          const char* solver) {
  switch (loss.kind) {
    case LossKind::HingeBelow:
      return {loss.beta == kInf ? ScalarLoss::hinge_below(loss.a, beta_cfg) : loss};
    case LossKind::HingeAbove:
      return {loss.beta == kInf ? ScalarLoss::hinge_above(loss.b, beta_cfg) : loss};
    case LossKind::HalfSpaceGeq:
      return {ScalarLoss::hinge_below(loss.a, beta_cfg)};
    case LossKind::HalfSpaceLeq:
      return {ScalarLoss::hinge_above(loss.b, beta_cfg)};
    case LossKind::Vapnik:
      if (loss.beta != kInf)
        return {ScalarLoss::hinge_below(loss.a, 2.0 * loss.beta),
                ScalarLoss::hinge_above(loss.b, 2.0 * loss.beta)};
      [[fallthrough]];
    case LossKind::Interval:
      return {ScalarLoss::hinge_below(loss.a, beta_cfg),
              ScalarLoss::hinge_above(loss.b, beta_cfg)};
    case LossKind::L1:
      throw std::invalid_argument(std::string(solver) +
                                  ": L1 constraints have no primal-side update");
  }
  return {};
}

ScalarGaussian refreshed_primal_message(const std::vector<ScalarLoss>& hinges, double z) {
  ScalarGaussian msg{0.0, kInf};
  for (const auto& h : hinges) msg = product(msg, primal_nup_update(h, z));
  return msg;
}

void require_diagonal_input_prior(const ProblemInstance& instance, const char* solver) {
  if (!instance.priors.V_u.isDiagonal(0.0))
    throw std::invalid_argument(std::string(solver) +
                                ": input-side constraints require a diagonal input prior");
}

void check_finite(const Vec& m, const Mat& V, int iter, int n, const char* solver) {
  if (!m.allFinite() || !V.allFinite())
    throw std::runtime_error(std::string(solver) + ": non-finite message at iteration " +
                             std::to_string(iter) + ", step " + std::to_string(n));
}

// In-place scalar observation update with a precision-form factor
// exp(xi*y - W*y^2/2) on y = c x. Scalar reciprocal only.
void observe_in_place(Vec& m, Mat& V, const RowVec& c, double xi, double W, const char* solver) {
  const Vec Vc = V * c.transpose();
  double s = c.dot(Vc);
  if (s < 0.0) s = 0.0;
  const double denom = 1.0 + W * s;
  if (!(denom > 0.0)) throw std::runtime_error(std::string(solver) + ": singular system");
  V.noalias() -= (W / denom) * (Vc * Vc.transpose());
  V = 0.5 * (V + V.transpose());
  m.noalias() += Vc * ((xi - W * c.dot(m)) / denom);
}

struct ConstraintGrid {
  std::vector<int> out;  // (n-1)*K + (k-1) -> constraint index or -1
  std::vector<int> in;   // (n-1)*L + (l-1) -> constraint index or -1
};

ConstraintGrid build_grid(const ProblemInstance& instance) {
  const auto& model = instance.model;
  ConstraintGrid grid;
  grid.out.assign(static_cast<std::size_t>(model.N) * model.K(), -1);
  grid.in.assign(static_cast<std::size_t>(model.N) * model.L(), -1);
  for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
    const auto& c = instance.constraints[i];
    if (c.on == ConstraintTarget::Output)
      grid.out[static_cast<std::size_t>(c.n - 1) * model.K() + (c.k - 1)] = static_cast<int>(i);
    else
      grid.in[static_cast<std::size_t>(c.n - 1) * model.L() + (c.k - 1)] = static_cast<int>(i);
  }
  return grid;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("config: max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
  if (!(beta > 0.0) || beta == kInf)
    throw std::invalid_argument("config: beta must be positive and finite");
}

Solution solve_iffbdd(const ProblemInstance& instance, const SolverConfig& config) {
  instance.validate();
  config.validate();
  if (instance.has_input_constraints()) require_diagonal_input_prior(instance, "iffbdd");

  const auto& model = instance.model;
  const int M = model.M(), L = model.L(), K = model.K(), N = model.N;
  const ConstraintGrid grid = build_grid(instance);

  // Per-constraint dual state: proxy slope and backward message in primal
  // precision form (xi = -dual mean, W = dual variance).
  const std::size_t nc = instance.constraints.size();
  std::vector<double> gamma(nc);
  std::vector<ScalarFactor> bwd(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    const auto& loss = instance.constraints[i].loss;
    gamma[i] = initial_gamma(loss, config.gamma_mode);
    const ScalarGaussian msg = initial_message(loss);
    bwd[i] = ScalarFactor{msg.m / msg.V, 1.0 / msg.V};
  }

  const Vec u_prior_var = instance.priors.V_u.diagonal();

  Mat R(static_cast<Eigen::Index>(N) * K, M);  // rows c_k V before the k-th update
  Vec s(static_cast<Eigen::Index>(N) * K);     // c_k m before the k-th update

  Solution sol;
  sol.u_hat.resize(N, L);
  sol.y_hat.resize(N, K);
  sol.z_tilde_hat = Mat::Zero(N, K);
  sol.u_tilde_hat = Mat::Zero(N, L);

  const auto t0 = Clock::now();
  double J_prev = 0.0;

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    // Forward Kalman sweep with sequential scalar output updates.
    Vec m = instance.priors.m_x1;
    Mat V = instance.priors.V_x1;
    for (int n = 1; n <= N; ++n) {
      for (int k = 1; k <= K; ++k) {
        const Eigen::Index idx = static_cast<Eigen::Index>(n - 1) * K + (k - 1);
        const RowVec c = model.C.row(k - 1);
        R.row(idx) = c * V;
        s(idx) = c.dot(m);
        const int ci = grid.out[static_cast<std::size_t>(idx)];
        if (ci >= 0) observe_in_place(m, V, c, bwd[ci].xi, bwd[ci].W, "iffbdd");
      }
      // Time update with the input prior combined with any input-side
      // backward factors.
      Vec mu = instance.priors.m_u;
      Vec vu = u_prior_var;
      for (int l = 1; l <= L; ++l) {
        const int ci = grid.in[static_cast<std::size_t>(n - 1) * L + (l - 1)];
        if (ci < 0) continue;
        const double W_eff = 1.0 / vu(l - 1) + bwd[ci].W;
        const double xi_eff = mu(l - 1) / vu(l - 1) + bwd[ci].xi;
        vu(l - 1) = 1.0 / W_eff;
        mu(l - 1) = xi_eff / W_eff;
      }
      m = model.A * m + model.B * mu;
      V = model.A * V * model.A.transpose() +
          model.B * vu.asDiagonal() * model.B.transpose();
      V = 0.5 * (V + V.transpose());
      check_finite(m, V, iter, n, "iffbdd");
    }

    // Backward dual deciding sweep.
    Vec dual_state = Vec::Zero(M);
    for (int n = N; n >= 1; --n) {
      const Vec bt = model.B.transpose() * dual_state;
      for (int l = 1; l <= L; ++l) {
        const double m_fwd = instance.priors.m_u(l - 1) - u_prior_var(l - 1) * bt(l - 1);
        const int ci = grid.in[static_cast<std::size_t>(n - 1) * L + (l - 1)];
        if (ci < 0) {
          sol.u_hat(n - 1, l - 1) = m_fwd;
          continue;
        }
        const auto& loss = instance.constraints[ci].loss;
        const double Vt = 1.0 / u_prior_var(l - 1);
        const double mt = m_fwd * Vt;
        gamma[ci] = std::max(gamma[ci], gamma_min(loss, mt, Vt));
        const double zt = dual_decide(loss, mt, Vt, gamma[ci]);
        const ScalarGaussian upd = dual_nup_update(loss, zt, gamma[ci]);
        bwd[ci] = ScalarFactor{-upd.m, upd.V};
        sol.u_tilde_hat(n - 1, l - 1) = zt;
        sol.u_hat(n - 1, l - 1) = m_fwd - u_prior_var(l - 1) * zt;
      }
      dual_state = model.A.transpose() * dual_state;
      for (int k = K; k >= 1; --k) {
        const Eigen::Index idx = static_cast<Eigen::Index>(n - 1) * K + (k - 1);
        const double Vy = R.row(idx).dot(model.C.row(k - 1));
        const double my = s(idx) - R.row(idx).dot(dual_state);
        const int ci = grid.out[static_cast<std::size_t>(idx)];
        if (ci < 0) {
          sol.y_hat(n - 1, k - 1) = my;
          continue;
        }
        if (!(Vy > 0.0))
          throw std::runtime_error("iffbdd: degenerate forward output variance at iteration " +
                                   std::to_string(iter));
        const auto& loss = instance.constraints[ci].loss;
        const double Vt = 1.0 / Vy;
        const double mt = my * Vt;
        gamma[ci] = std::max(gamma[ci], gamma_min(loss, mt, Vt));
        const double zt = dual_decide(loss, mt, Vt, gamma[ci]);
        const ScalarGaussian upd = dual_nup_update(loss, zt, gamma[ci]);
        bwd[ci] = ScalarFactor{-upd.m, upd.V};
        sol.z_tilde_hat(n - 1, k - 1) = zt;
        sol.y_hat(n - 1, k - 1) = my - Vy * zt;
        dual_state.noalias() += model.C.row(k - 1).transpose() * zt;
      }
    }
    sol.x1_hat = instance.priors.m_x1 - instance.priors.V_x1 * dual_state;

    sol.J = objective_eval(instance, sol.x1_hat, sol.u_hat);
    if (!std::isfinite(sol.J))
      throw std::runtime_error("iffbdd: non-finite objective at iteration " +
                               std::to_string(iter));
    const double viol =
        feasibility_check(instance, sol.y_hat, sol.u_hat, kInf).max_violation;
    if (config.record_history)
      sol.history.records.push_back({iter, sol.J, viol, seconds_since(t0)});
    sol.iters = iter;
    if (relative_change(sol.J, J_prev) < config.tol) {
      sol.converged = true;
      break;
    }
    J_prev = sol.J;
  }
  sol.status = sol.converged ? "converged" : "not converged (max iterations)";
  return sol;
}

SmootherResult smoother(const ProblemInstance& instance,
                        const std::vector<std::vector<ScalarGaussian>>& y_bwd) {
  instance.validate();
  const auto& model = instance.model;
  const int M = model.M(), L = model.L(), K = model.K(), N = model.N;
  if (static_cast<int>(y_bwd.size()) != N)
    throw std::invalid_argument("smoother: message grid must have N rows");
  for (const auto& row : y_bwd)
    if (static_cast<int>(row.size()) != K)
      throw std::invalid_argument("smoother: message grid must have K columns");

  Mat R(static_cast<Eigen::Index>(N) * K, M);
  Vec s(static_cast<Eigen::Index>(N) * K);

  Vec m = instance.priors.m_x1;
  Mat V = instance.priors.V_x1;
  for (int n = 1; n <= N; ++n) {
    for (int k = 1; k <= K; ++k) {
      const Eigen::Index idx = static_cast<Eigen::Index>(n - 1) * K + (k - 1);
      const RowVec c = model.C.row(k - 1);
      R.row(idx) = c * V;
      s(idx) = c.dot(m);
      const ScalarGaussian& msg = y_bwd[n - 1][k - 1];
      if (!msg.informative()) continue;
      const Vec Vc = V * c.transpose();
      double sv = c.dot(Vc);
      if (sv < 0.0) sv = 0.0;
      const double innov = msg.V + sv;
      if (!(innov > 0.0)) throw std::runtime_error("smoother: singular system");
      const double G = 1.0 / innov;
      V.noalias() -= G * (Vc * Vc.transpose());
      V = 0.5 * (V + V.transpose());
      m.noalias() += Vc * (G * (msg.m - c.dot(m)));
    }
    m = model.A * m + model.B * instance.priors.m_u;
    V = model.A * V * model.A.transpose() +
        model.B * instance.priors.V_u * model.B.transpose();
    V = 0.5 * (V + V.transpose());
    check_finite(m, V, 1, n, "smoother");
  }

  SmootherResult out;
  out.u.resize(N, L);
  out.y.resize(N, K);
  Vec dual_state = Vec::Zero(M);
  for (int n = N; n >= 1; --n) {
    out.u.row(n - 1) =
        (instance.priors.m_u - instance.priors.V_u * (model.B.transpose() * dual_state))
            .transpose();
    dual_state = model.A.transpose() * dual_state;
    for (int k = K; k >= 1; --k) {
      const Eigen::Index idx = static_cast<Eigen::Index>(n - 1) * K + (k - 1);
      const double Vy = R.row(idx).dot(model.C.row(k - 1));
      const double my = s(idx) - R.row(idx).dot(dual_state);
      const ScalarGaussian& msg = y_bwd[n - 1][k - 1];
      if (!msg.informative()) {
        out.y(n - 1, k - 1) = my;
        continue;
      }
      const double denom = Vy + msg.V;
      if (!(denom > 0.0)) throw std::runtime_error("smoother: singular system");
      const double zt = (my - msg.m) / denom;  // Gaussian closed form of the dual decision
      out.y(n - 1, k - 1) = my - Vy * zt;
      dual_state.noalias() += model.C.row(k - 1).transpose() * zt;
    }
  }
  out.x1 = instance.priors.m_x1 - instance.priors.V_x1 * dual_state;
  return out;
}

Solution solve_irlge(const ProblemInstance& instance, const SolverConfig& config) {
  instance.validate();
  config.validate();
  if (instance.has_input_constraints())
    throw std::invalid_argument("IRLGE supports output-side constraints only");

  const auto& model = instance.model;
  const int K = model.K(), N = model.N;
  const ConstraintGrid grid = build_grid(instance);

  std::vector<std::vector<ScalarLoss>> hinges(instance.constraints.size());
  for (std::size_t i = 0; i < instance.constraints.size(); ++i)
    hinges[i] = primal_surrogates(instance.constraints[i].loss, config.beta, "irlge");

  std::vector<std::vector<ScalarGaussian>> msgs(
      N, std::vector<ScalarGaussian>(K, ScalarGaussian{0.0, kInf}));
  for (const auto& c : instance.constraints)
    msgs[c.n - 1][c.k - 1] = initial_message(c.loss);

  Solution sol;
  const auto t0 = Clock::now();
  double J_prev = 0.0;

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const SmootherResult sm = smoother(instance, msgs);
    sol.x1_hat = sm.x1;
    sol.u_hat = sm.u;
    sol.y_hat = sm.y;

    sol.J = objective_eval(instance, sol.x1_hat, sol.u_hat);
    if (!std::isfinite(sol.J))
      throw std::runtime_error("irlge: non-finite objective at iteration " +
                               std::to_string(iter));
    const double viol =
        feasibility_check(instance, sol.y_hat, sol.u_hat, kInf).max_violation;
    if (config.record_history)
      sol.history.records.push_back({iter, sol.J, viol, seconds_since(t0)});
    sol.iters = iter;
    if (relative_change(sol.J, J_prev) < config.tol) {
      sol.converged = true;
      break;
    }
    J_prev = sol.J;

    for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
      const auto& c = instance.constraints[i];
      const ScalarGaussian msg = refreshed_primal_message(hinges[i], sm.y(c.n - 1, c.k - 1));
      if (msg.V == 0.0) sol.stuck_at_boundary = true;
      msgs[c.n - 1][c.k - 1] = msg;
    }
  }

  sol.z_tilde_hat = Mat::Zero(N, K);
  sol.u_tilde_hat = Mat::Zero(N, model.L());
  sol.status = sol.converged ? "converged" : "not converged (max iterations)";
  if (sol.stuck_at_boundary) sol.status += "; zero-variance hinge message encountered";
  return sol;
}

Solution solve_ibffd(const ProblemInstance& instance, const SolverConfig& config) {
  instance.validate();
  config.validate();
  if (instance.has_output_constraints())
    throw std::invalid_argument("IBFFD requires input-side constraints");
  require_diagonal_input_prior(instance, "ibffd");

  const auto& model = instance.model;
  const int M = model.M(), L = model.L(), K = model.K(), N = model.N;
  const ConstraintGrid grid = build_grid(instance);
  const Vec u_prior_var = instance.priors.V_u.diagonal();

  std::vector<std::vector<ScalarLoss>> hinges(instance.constraints.size());
  for (std::size_t i = 0; i < instance.constraints.size(); ++i)
    hinges[i] = primal_surrogates(instance.constraints[i].loss, config.beta, "ibffd");

  std::vector<ScalarGaussian> msgs(instance.constraints.size());
  for (std::size_t i = 0; i < instance.constraints.size(); ++i)
    msgs[i] = initial_message(instance.constraints[i].loss);

  // Initial-state prior in precision form for the first forward decision.
  Eigen::LDLT<Mat> x1_ldlt(instance.priors.V_x1);
  if (x1_ldlt.info() != Eigen::Success || !x1_ldlt.isPositive())
    throw std::runtime_error("ibffd: singular initial-state prior");
  const Mat W_x1 = x1_ldlt.solve(Mat::Identity(M, M));
  const Vec xi_x1 = x1_ldlt.solve(instance.priors.m_x1);

  // Backward-message snapshots taken just before each input is absorbed:
  // the row b_l' W, and the scalars b_l' xi and b_l' W b_l.
  Mat snap_row(static_cast<Eigen::Index>(N) * L, M);
  Vec snap_xi(static_cast<Eigen::Index>(N) * L), snap_quad(static_cast<Eigen::Index>(N) * L);

  Solution sol;
  sol.u_hat.resize(N, L);
  sol.y_hat.resize(N, K);
  sol.z_tilde_hat = Mat::Zero(N, K);
  sol.u_tilde_hat = Mat::Zero(N, L);

  const auto t0 = Clock::now();
  double J_prev = 0.0;

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    // Backward Gaussian max-product sweep in precision form.
    Mat W = Mat::Zero(M, M);
    Vec xi = Vec::Zero(M);
    Mat W_at_x1;
    Vec xi_at_x1;
    for (int n = N; n >= 1; --n) {
      for (int l = L; l >= 1; --l) {
        const Eigen::Index idx = static_cast<Eigen::Index>(n - 1) * L + (l - 1);
        const Vec Bl = model.B.col(l - 1);
        snap_row.row(idx) = (W * Bl).transpose();
        snap_xi(idx) = Bl.dot(xi);
        snap_quad(idx) = Bl.dot(W * Bl);

        const int ci = grid.in[static_cast<std::size_t>(idx)];
        const ScalarGaussian msg =
            ci >= 0 ? msgs[static_cast<std::size_t>(ci)] : ScalarGaussian{0.0, kInf};
        if (msg.V == 0.0) {
          // Pinned input: deterministic shift of the message.
          xi.noalias() -= (W * Bl) * msg.m;
          continue;
        }
        double omega = 1.0 / u_prior_var(l - 1);
        double psi = instance.priors.m_u(l - 1) / u_prior_var(l - 1);
        if (msg.informative()) {
          omega += 1.0 / msg.V;
          psi += msg.m / msg.V;
        }
        const double d = omega + snap_quad(idx);
        if (!(d > 0.0)) throw std::runtime_error("ibffd: singular system");
        const Vec g = W * Bl;
        W.noalias() -= (g * g.transpose()) / d;
        W = 0.5 * (W + W.transpose());
        xi.noalias() -= g * ((psi + snap_xi(idx)) / d);
      }
      W = model.A.transpose() * W * model.A;
      W = 0.5 * (W + W.transpose());
      xi = model.A.transpose() * xi;
      check_finite(xi, W, iter, n, "ibffd");
      if (n == 1) {
        W_at_x1 = W;
        xi_at_x1 = xi;
      }
    }

    // Forward deciding against the true losses.
    sol.x1_hat = (W_x1 + W_at_x1).ldlt().solve(xi_x1 + xi_at_x1);
    Vec x = sol.x1_hat;
    for (int n = 1; n <= N; ++n) {
      sol.y_hat.row(n - 1) = (model.C * x).transpose();
      Vec t = model.A * x;
      for (int l = 1; l <= L; ++l) {
        const Eigen::Index idx = static_cast<Eigen::Index>(n - 1) * L + (l - 1);
        const double p = 1.0 / u_prior_var(l - 1) + snap_quad(idx);
        const double lin = instance.priors.m_u(l - 1) / u_prior_var(l - 1) + snap_xi(idx) -
                           snap_row.row(idx).dot(t);
        const double m_eff = lin / p;
        const int ci = grid.in[static_cast<std::size_t>(idx)];
        const double u =
            ci >= 0 ? primal_prox(instance.constraints[static_cast<std::size_t>(ci)].loss,
                                  m_eff, 1.0 / p)
                    : m_eff;
        sol.u_hat(n - 1, l - 1) = u;
        t.noalias() += model.B.col(l - 1) * u;
      }
      x = t;
    }

    sol.J = objective_eval(instance, sol.x1_hat, sol.u_hat);
    if (!std::isfinite(sol.J))
      throw std::runtime_error("ibffd: non-finite objective at iteration " +
                               std::to_string(iter));
    const double viol =
        feasibility_check(instance, sol.y_hat, sol.u_hat, kInf).max_violation;
    if (config.record_history)
      sol.history.records.push_back({iter, sol.J, viol, seconds_since(t0)});
    sol.iters = iter;
    if (relative_change(sol.J, J_prev) < config.tol) {
      sol.converged = true;
      break;
    }
    J_prev = sol.J;

    for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
      const auto& c = instance.constraints[i];
      const ScalarGaussian msg =
          refreshed_primal_message(hinges[i], sol.u_hat(c.n - 1, c.k - 1));
      if (msg.V == 0.0) sol.stuck_at_boundary = true;
      msgs[i] = msg;
    }
  }

  sol.status = sol.converged ? "converged" : "not converged (max iterations)";
  return sol;
}

Solution solve(const std::string& solver_name, const ProblemInstance& instance,
               const SolverConfig& config) {
  if (solver_name == "iffbdd") return solve_iffbdd(instance, config);
  if (solver_name == "irlge") return solve_irlge(instance, config);
  if (solver_name == "ibffd") return solve_ibffd(instance, config);
  throw std::invalid_argument("unknown solver \"" + solver_name +
                              "\" (expected iffbdd, irlge, or ibffd)");
}

FeasibilityReport feasibility_check(const ProblemInstance& instance, const Solution& solution,
                                    double tol) {
  return feasibility_check(instance, solution.y_hat, solution.u_hat, tol);
}

}  // namespace dualnup
