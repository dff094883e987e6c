#include "dualnup/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace dualnup {
namespace oracle {

namespace {

// The decision vector is w = [x1; u_1; ...; u_N], dimension D = M + N*L.
struct QpData {
  const ProblemInstance* instance = nullptr;
  int D = 0;
  Mat P;      // prior precision, block diagonal
  Vec mbar;   // prior means
  Mat G;      // one row per constraint
  Vec lo, hi; // bounds, +-inf where one-sided
};

Mat spd_inverse(const Mat& V, const char* what) {
  Eigen::LDLT<Mat> ldlt(V);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.vectorD().minCoeff() <= 0.0)
    throw std::runtime_error(what);
  return ldlt.solve(Mat::Identity(V.rows(), V.cols()));
}

QpData build_qp(const ProblemInstance& instance) {
  instance.validate();
  const auto& model = instance.model;
  const int M = model.M(), L = model.L(), K = model.K(), N = model.N;

  QpData qp;
  qp.instance = &instance;
  qp.D = M + N * L;
  qp.P = Mat::Zero(qp.D, qp.D);
  qp.mbar = Vec::Zero(qp.D);

  const Mat Wx1 = spd_inverse(instance.priors.V_x1, "oracle: singular prior covariance");
  const Mat Wu = spd_inverse(instance.priors.V_u, "oracle: singular prior covariance");
  qp.P.topLeftCorner(M, M) = Wx1;
  qp.mbar.head(M) = instance.priors.m_x1;
  for (int n = 0; n < N; ++n) {
    qp.P.block(M + n * L, M + n * L, L, L) = Wu;
    qp.mbar.segment(M + n * L, L) = instance.priors.m_u;
  }

  // Output rows y_{n,k} = c_k A^{n-1} x1 + sum_{j<n} c_k A^{n-1-j} B u_j.
  std::vector<Mat> CA(N);  // CA[n-1] = C A^{n-1}
  CA[0] = model.C;
  for (int n = 1; n < N; ++n) CA[n] = CA[n - 1] * model.A;
  std::vector<Mat> CQ(std::max(N - 1, 0));  // CQ[t] = C A^t B
  if (N > 1) {
    Mat Q = model.B;
    CQ[0] = model.C * Q;
    for (int t = 1; t < N - 1; ++t) {
      Q = model.A * Q;
      CQ[t] = model.C * Q;
    }
  }

  const int m = static_cast<int>(instance.constraints.size());
  qp.G = Mat::Zero(m, qp.D);
  qp.lo.resize(m);
  qp.hi.resize(m);
  for (int i = 0; i < m; ++i) {
    const auto& c = instance.constraints[i];
    if (!c.loss.is_hard())
      throw std::invalid_argument("oracle: supports hard (indicator) constraints only");
    qp.lo(i) = c.loss.lower_bound();
    qp.hi(i) = c.loss.upper_bound();
    if (c.on == ConstraintTarget::Input) {
      qp.G(i, M + (c.n - 1) * L + (c.k - 1)) = 1.0;
    } else {
      qp.G.row(i).head(M) = CA[c.n - 1].row(c.k - 1);
      for (int j = 1; j < c.n; ++j)
        qp.G.row(i).segment(M + (j - 1) * L, L) = CQ[c.n - 1 - j].row(c.k - 1);
    }
  }
  return qp;
}

double bound_value(const QpData& qp, int row, Side side) {
  return side == Side::Lower ? qp.lo(row) : qp.hi(row);
}

struct KktResult {
  Vec w;
  Vec lambda;
  bool rank_ok = true;
};

// Equality-constrained solve for a fixed activity pattern, with one step of
// iterative refinement.
KktResult kkt_solve(const QpData& qp, const std::vector<std::pair<int, Side>>& active) {
  const int D = qp.D;
  const int na = static_cast<int>(active.size());
  Mat kkt = Mat::Zero(D + na, D + na);
  kkt.topLeftCorner(D, D) = qp.P;
  Vec rhs(D + na);
  rhs.head(D) = qp.P * qp.mbar;
  for (int i = 0; i < na; ++i) {
    kkt.block(D + i, 0, 1, D) = qp.G.row(active[i].first);
    kkt.block(0, D + i, D, 1) = qp.G.row(active[i].first).transpose();
    rhs(D + i) = bound_value(qp, active[i].first, active[i].second);
  }
  Eigen::FullPivLU<Mat> lu(kkt);
  KktResult res;
  if (lu.rank() < D + na) {
    res.rank_ok = false;
    return res;
  }
  Vec sol = lu.solve(rhs);
  sol += lu.solve(rhs - kkt * sol);
  res.w = sol.head(D);
  res.lambda = sol.tail(na);
  return res;
}

OracleSolution package(const QpData& qp, const Vec& w,
                       const std::vector<std::pair<int, Side>>& active, const Vec& lambda) {
  const auto& instance = *qp.instance;
  const auto& model = instance.model;
  const int M = model.M(), L = model.L(), N = model.N;

  OracleSolution sol;
  sol.x1 = w.head(M);
  sol.u.resize(N, L);
  for (int n = 0; n < N; ++n) sol.u.row(n) = w.segment(M + n * L, L).transpose();
  sol.y = simulate(model, sol.x1, sol.u).outputs;
  sol.J = objective_eval(instance, sol.x1, sol.u);
  sol.multipliers.resize(static_cast<Eigen::Index>(active.size()));
  for (std::size_t i = 0; i < active.size(); ++i) {
    const auto& c = instance.constraints[active[i].first];
    sol.active.push_back({c.n, c.k, c.on, active[i].second});
    sol.multipliers(static_cast<Eigen::Index>(i)) = lambda(static_cast<Eigen::Index>(i));
  }
  Vec grad = qp.P * (w - qp.mbar);
  for (std::size_t i = 0; i < active.size(); ++i)
    grad += lambda(static_cast<Eigen::Index>(i)) * qp.G.row(active[i].first).transpose();
  sol.stationarity = grad.size() ? grad.cwiseAbs().maxCoeff() : 0.0;
  return sol;
}

bool signs_ok(const std::vector<std::pair<int, Side>>& active, const Vec& lambda, double tol) {
  for (std::size_t i = 0; i < active.size(); ++i) {
    const double lam = lambda(static_cast<Eigen::Index>(i));
    if (active[i].second == Side::Upper && lam < -tol) return false;
    if (active[i].second == Side::Lower && lam > tol) return false;
  }
  return true;
}

double worst_violation(const QpData& qp, const Vec& w, int* row, Side* side) {
  const Vec gw = qp.G * w;
  double worst = 0.0;
  for (int i = 0; i < gw.size(); ++i) {
    if (std::isfinite(qp.lo(i)) && qp.lo(i) - gw(i) > worst) {
      worst = qp.lo(i) - gw(i);
      *row = i;
      *side = Side::Lower;
    }
    if (std::isfinite(qp.hi(i)) && gw(i) - qp.hi(i) > worst) {
      worst = gw(i) - qp.hi(i);
      *row = i;
      *side = Side::Upper;
    }
  }
  return worst;
}

}  // namespace

OracleSolution active_set_qp(const ProblemInstance& instance, const QpOptions& opts) {
  const QpData qp = build_qp(instance);
  const int m = static_cast<int>(instance.constraints.size());
  if (m > opts.max_constraints) throw std::runtime_error("oracle: enumeration bound exceeded");

  // Dual active-set iteration (Goldfarb/Idnani scheme): start at the
  // unconstrained optimum, repeatedly bring in the most violated bound with
  // proper primal/dual step lengths, dropping blocking constraints along
  // the way. Dense refactorization per step; fine at oracle scale.
  const Mat Pinv = spd_inverse(qp.P, "oracle: singular prior covariance");

  Vec w = qp.mbar;
  std::vector<std::pair<int, Side>> active;
  std::vector<double> u;  // nonnegative multipliers of sigma*g*w >= sigma*bound

  auto normal_of = [&](int row, Side side) -> Vec {
    const double sigma = side == Side::Lower ? 1.0 : -1.0;
    return sigma * qp.G.row(row).transpose();
  };
  auto slack_of = [&](int row, Side side, const Vec& point) -> double {
    const double gw = qp.G.row(row).dot(point);
    return side == Side::Lower ? gw - qp.lo(row) : qp.hi(row) - gw;
  };

  const int cap = 200 + 40 * (m + qp.D);
  int steps = 0;
  for (;;) {
    // Most violated one-sided bound.
    int p_row = -1;
    Side p_side = Side::Upper;
    double worst = -opts.feas_tol;
    for (int i = 0; i < m; ++i) {
      if (std::isfinite(qp.lo(i))) {
        const double s = slack_of(i, Side::Lower, w);
        if (s < worst) {
          worst = s;
          p_row = i;
          p_side = Side::Lower;
        }
      }
      if (std::isfinite(qp.hi(i))) {
        const double s = slack_of(i, Side::Upper, w);
        if (s < worst) {
          worst = s;
          p_row = i;
          p_side = Side::Upper;
        }
      }
    }
    if (p_row < 0) break;  // primal feasible with dual-feasible multipliers

    const Vec np = normal_of(p_row, p_side);
    double up = 0.0;
    for (;;) {
      if (++steps > cap)
        throw std::runtime_error("oracle: infeasible instance or active-set cycling");

      // Step directions: z in the primal, r in the dual.
      const int na = static_cast<int>(active.size());
      Vec z, r;
      if (na == 0) {
        z = Pinv * np;
        r = Vec();
      } else {
        Mat N(qp.D, na);
        for (int i = 0; i < na; ++i) N.col(i) = normal_of(active[i].first, active[i].second);
        const Mat PiN = Pinv * N;
        Eigen::FullPivLU<Mat> lu(N.transpose() * PiN);
        r = lu.solve(PiN.transpose() * np);
        z = Pinv * np - PiN * r;
      }

      // Dual step bound from blocking constraints.
      double t1 = kInf;
      int blocker = -1;
      for (int i = 0; i < na; ++i) {
        if (r.size() && r(i) > 1e-14) {
          const double bound = u[static_cast<std::size_t>(i)] / r(i);
          if (bound < t1) {
            t1 = bound;
            blocker = i;
          }
        }
      }
      // Primal step to reach the violated bound.
      const double gz = np.dot(z);
      const double violation = -slack_of(p_row, p_side, w);
      const double t2 = gz > 1e-13 ? violation / gz : kInf;

      const double t = std::min(t1, t2);
      if (t == kInf) throw std::runtime_error("oracle: infeasible instance");

      if (t2 != kInf) w += t * z;
      for (int i = 0; i < na; ++i) u[static_cast<std::size_t>(i)] -= t * (r.size() ? r(i) : 0.0);
      up += t;

      if (t == t2) {
        active.push_back({p_row, p_side});
        u.push_back(up);
        break;
      }
      active.erase(active.begin() + blocker);
      u.erase(u.begin() + blocker);
    }
  }

  // Polish on the identified activity pattern and certify.
  KktResult res = kkt_solve(qp, active);
  if (!res.rank_ok) throw std::runtime_error("oracle: KKT certificate failed (rank)");
  if (!signs_ok(active, res.lambda, opts.sign_tol))
    throw std::runtime_error("oracle: KKT certificate failed (multiplier sign)");
  int row;
  Side side;
  if (worst_violation(qp, res.w, &row, &side) > 10.0 * opts.feas_tol)
    throw std::runtime_error("oracle: KKT certificate failed (feasibility)");
  OracleSolution sol = package(qp, res.w, active, res.lambda);
  if (sol.stationarity > 1e-9)
    throw std::runtime_error("oracle: KKT certificate failed (stationarity)");
  return sol;
}

OracleSolution enumerate_qp(const ProblemInstance& instance, const QpOptions& opts) {
  const QpData qp = build_qp(instance);
  const int m = static_cast<int>(instance.constraints.size());
  if (m > 12) throw std::runtime_error("oracle: enumeration bound exceeded");

  long best = -1;
  double bestJ = kInf;
  Vec best_w, best_lambda;
  std::vector<std::pair<int, Side>> best_active;

  long total = 1;
  for (int i = 0; i < m; ++i) total *= 3;
  for (long code = 0; code < total; ++code) {
    std::vector<std::pair<int, Side>> active;
    long c = code;
    bool valid = true;
    for (int i = 0; i < m; ++i, c /= 3) {
      const int state = static_cast<int>(c % 3);
      if (state == 1) {
        if (!std::isfinite(qp.lo(i))) { valid = false; break; }
        active.push_back({i, Side::Lower});
      } else if (state == 2) {
        if (!std::isfinite(qp.hi(i))) { valid = false; break; }
        active.push_back({i, Side::Upper});
      }
    }
    if (!valid) continue;
    KktResult res = kkt_solve(qp, active);
    if (!res.rank_ok) continue;  // prune rank-deficient equality systems
    if (!signs_ok(active, res.lambda, opts.sign_tol)) continue;
    int row;
    Side side;
    if (worst_violation(qp, res.w, &row, &side) > opts.feas_tol) continue;
    const double J = 0.5 * (res.w - qp.mbar).dot(qp.P * (res.w - qp.mbar));
    if (J < bestJ) {
      bestJ = J;
      best = code;
      best_w = res.w;
      best_lambda = res.lambda;
      best_active = active;
    }
  }
  if (best < 0) throw std::runtime_error("oracle: infeasible instance");
  return package(qp, best_w, best_active, best_lambda);
}

ProjectedGradientResult projected_gradient(const ProblemInstance& instance, long max_steps) {
  const QpData qp = build_qp(instance);
  const int m = static_cast<int>(qp.G.rows());
  const Mat Pinv = spd_inverse(qp.P, "oracle: singular prior covariance");
  const Mat H = qp.G * Pinv * qp.G.transpose();

  // Largest-eigenvalue bound via power iteration; the pair structure of the
  // multipliers doubles it.
  Vec v = Vec::Ones(m).normalized();
  double eig = 1.0;
  for (int it = 0; it < 100; ++it) {
    Vec Hv = H * v;
    const double norm = Hv.norm();
    if (norm < 1e-300) break;
    eig = norm;
    v = Hv / norm;
  }
  const double step = 1.0 / (2.0 * eig * 1.01 + 1e-12);

  const Vec Gm = qp.G * qp.mbar;
  Vec lam_lo = Vec::Zero(m), lam_up = Vec::Zero(m);
  long steps = 0;
  for (; steps < max_steps; ++steps) {
    const Vec z = lam_up - lam_lo;
    const Vec gw = Gm - H * z;  // G w(lambda)
    double max_move = 0.0;
    for (int i = 0; i < m; ++i) {
      if (std::isfinite(qp.hi(i))) {
        const double next = std::max(0.0, lam_up(i) - step * (qp.hi(i) - gw(i)));
        max_move = std::max(max_move, std::abs(next - lam_up(i)));
        lam_up(i) = next;
      }
      if (std::isfinite(qp.lo(i))) {
        const double next = std::max(0.0, lam_lo(i) - step * (gw(i) - qp.lo(i)));
        max_move = std::max(max_move, std::abs(next - lam_lo(i)));
        lam_lo(i) = next;
      }
    }
    if (max_move < 1e-15) break;
  }

  const Vec w = qp.mbar - Pinv * (qp.G.transpose() * (lam_up - lam_lo));
  ProjectedGradientResult res;
  const auto& model = instance.model;
  res.x1 = w.head(model.M());
  res.u.resize(model.N, model.L());
  for (int n = 0; n < model.N; ++n)
    res.u.row(n) = w.segment(model.M() + n * model.L(), model.L()).transpose();
  res.J = objective_eval(instance, res.x1, res.u);
  res.steps_taken = steps;
  return res;
}

double scalar_grid_argmin(const std::function<double(double)>& objective, double lo, double hi,
                          double step) {
  if (!(lo < hi) || !(step > 0.0)) throw std::invalid_argument("scalar_grid_argmin: bad grid");
  double best_z = lo, best_v = kInf;
  // Step-aligned points avoid drifting past domain boundaries of
  // extended-real objectives.
  const long base = static_cast<long>(std::round(lo / step));
  const long count = static_cast<long>(std::floor((hi - lo) / step + 0.5));
  for (long i = 0; i <= count; ++i) {
    const double z = static_cast<double>(base + i) * step;
    const double v = objective(z);
    if (std::isfinite(v) && v < best_v) {
      best_v = v;
      best_z = z;
    }
  }
  if (best_v == kInf)
    throw std::runtime_error("scalar_grid_argmin: objective non-finite on the whole grid");
  return best_z;
}

}  // namespace oracle
}  // namespace dualnup
