#include "dualnup/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "dualnup/gaussian.hpp"
#include "dualnup/loss.hpp"
#include "dualnup/oracle.hpp"
#include "dualnup/rng.hpp"
#include "dualnup/solvers.hpp"
#include "dualnup/state_space.hpp"

namespace dualnup {
namespace verify {

namespace {

const std::vector<LossKind> kFiniteKinds = {LossKind::L1, LossKind::HingeBelow,
                                            LossKind::HingeAbove, LossKind::Vapnik};
const std::vector<LossKind> kAllKinds = {
    LossKind::L1,           LossKind::HingeBelow,  LossKind::HingeAbove, LossKind::Vapnik,
    LossKind::HalfSpaceGeq, LossKind::HalfSpaceLeq, LossKind::Interval};

// Anchor and slope draws land bit-exactly on the 1e-3 lattice used by the
// grid oracles (same integer * step expression), so the piecewise-linear
// suprema are attained at evaluated grid points.
double lattice_draw(SplitMix64& rng, double lo, double hi) {
  return static_cast<double>(std::lround(rng.next_uniform(lo, hi) * 1000.0)) * 1e-3;
}

ScalarLoss random_loss(LossKind kind, SplitMix64& rng) {
  const long la = std::lround(rng.next_uniform(-2.0, 2.0) * 1000.0);
  const long lw = std::lround(rng.next_uniform(0.1, 2.0) * 1000.0);
  const double a = static_cast<double>(la) * 1e-3;
  const double b = static_cast<double>(la + lw) * 1e-3;
  const double beta = lattice_draw(rng, 0.5, 2.0);
  switch (kind) {
    case LossKind::L1:
      return ScalarLoss::l1(a, beta);
    case LossKind::HingeBelow:
      return ScalarLoss::hinge_below(a, beta);
    case LossKind::HingeAbove:
      return ScalarLoss::hinge_above(b, beta);
    case LossKind::Vapnik:
      return ScalarLoss::vapnik(a, b, beta);
    case LossKind::HalfSpaceGeq:
      return ScalarLoss::geq(a);
    case LossKind::HalfSpaceLeq:
      return ScalarLoss::leq(b);
    case LossKind::Interval:
      return ScalarLoss::interval(a, b);
  }
  return ScalarLoss::interval(a, b);
}

// Random dual point inside the region where the conjugate is finite.
double random_finite_dual_point(const ScalarLoss& loss, SplitMix64& rng) {
  const double beta = loss.beta;
  switch (loss.kind) {
    case LossKind::L1:
      return rng.next_uniform(-beta, beta);
    case LossKind::HingeBelow:
      return rng.next_uniform(-beta, 0.0);
    case LossKind::HingeAbove:
      return rng.next_uniform(0.0, beta);
    case LossKind::Vapnik:
      return rng.next_uniform(-2.0 * beta, 2.0 * beta);
    case LossKind::HalfSpaceGeq:
      return rng.next_uniform(-3.0, 0.0);
    case LossKind::HalfSpaceLeq:
      return rng.next_uniform(0.0, 3.0);
    case LossKind::Interval:
      return rng.next_uniform(-3.0, 3.0);
  }
  return 0.0;
}

// Step-aligned grid: points are integer multiples of the step, so kinks of
// piecewise-linear objectives whose parameters lie on the same lattice are
// evaluated exactly (no accumulated drift past a domain boundary).
double grid_max(const std::function<double(double)>& f, double lo, double hi, double step) {
  double best = -kInf;
  const long base = static_cast<long>(std::round(lo / step));
  const long count = static_cast<long>(std::floor((hi - lo) / step + 0.5));
  for (long i = 0; i <= count; ++i)
    best = std::max(best, f(static_cast<double>(base + i) * step));
  return best;
}

PropertyResult check(const std::string& name, long samples, double worst, double tol) {
  return PropertyResult{name, samples, worst, tol, worst <= tol};
}

// Kink positions of the proxy, used to keep tangency samples away from
// non-differentiable points.
std::vector<double> proxy_kinks(const ScalarLoss& loss) {
  const double beta = loss.beta;
  switch (loss.kind) {
    case LossKind::L1:
      return {-beta, beta};
    case LossKind::HingeBelow:
      return {-beta, 0.0};
    case LossKind::HingeAbove:
      return {0.0, beta};
    case LossKind::Vapnik:
      return {-2.0 * beta, 0.0, 2.0 * beta};
    default:
      return {0.0};
  }
}

Mat random_spd(int dim, SplitMix64& rng) {
  Mat A(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) A(i, j) = rng.next_normal();
  return A * A.transpose() + 0.2 * Mat::Identity(dim, dim);
}

Vec random_vec(int dim, SplitMix64& rng) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.next_normal();
  return v;
}

// Constraint rows over w = [x1; u_1; ...; u_N] extracted through simulate()
// with basis vectors; independent of the analytic propagation the oracle
// uses.
Mat output_rows_by_simulation(const ProblemInstance& inst) {
  const auto& model = inst.model;
  const int M = model.M(), L = model.L(), K = model.K(), N = model.N;
  const int D = M + N * L;
  Mat rows(static_cast<Eigen::Index>(N) * K, D);
  for (int d = 0; d < D; ++d) {
    Vec x1 = Vec::Zero(M);
    Mat u = Mat::Zero(N, L);
    if (d < M)
      x1(d) = 1.0;
    else
      u((d - M) / L, (d - M) % L) = 1.0;
    const Mat y = simulate(model, x1, u).outputs;
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < K; ++k) rows(static_cast<Eigen::Index>(n) * K + k, d) = y(n, k);
  }
  return rows;
}

}  // namespace

bool SuiteReport::pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

SuiteReport verify_losses() {
  SuiteReport report{"losses", {}};
  SplitMix64 rng(0x1055eedULL);

  {  // grid conjugacy
    double worst = 0.0;
    long samples = 0;
    for (LossKind kind : kAllKinds) {
      SplitMix64 krng(rng.next_u64());
      for (int i = 0; i < 100; ++i) {
        const ScalarLoss loss = random_loss(kind, krng);
        const double zt = random_finite_dual_point(loss, krng);
        const double grid = grid_max(
            [&](double z) {
              const double k = primal_eval(loss, z);
              return std::isfinite(k) ? zt * z - k : -kInf;
            },
            -50.0, 50.0, 1e-3);
        worst = std::max(worst, std::abs(grid - conjugate_eval(loss, zt)));
        ++samples;
      }
    }
    report.results.push_back(check("conjugate matches grid sup", samples, worst, 2e-3));
  }

  {  // grid biconjugacy (Legendre involution)
    double worst = 0.0;
    long samples = 0;
    for (LossKind kind : kAllKinds) {
      SplitMix64 krng(rng.next_u64());
      for (int i = 0; i < 100; ++i) {
        const ScalarLoss loss = random_loss(kind, krng);
        double z = lattice_draw(rng, -3.0, 3.0);
        if (loss.is_hard())  // sample where the loss is finite
          z = std::clamp(z, loss.lower_bound(), loss.upper_bound());
        const double grid = grid_max(
            [&](double zt) {
              const double c = conjugate_eval(loss, zt);
              return std::isfinite(c) ? z * zt - c : -kInf;
            },
            -50.0, 50.0, 1e-3);
        worst = std::max(worst, std::abs(grid - primal_eval(loss, z)));
        ++samples;
      }
    }
    report.results.push_back(check("biconjugate recovers the loss", samples, worst, 2e-3));
  }

  {  // proxy agreement on the finite region of the conjugate
    double worst = 0.0;
    long samples = 0;
    for (LossKind kind : kAllKinds) {
      SplitMix64 krng(rng.next_u64());
      for (int i = 0; i < 200; ++i) {
        const ScalarLoss loss = random_loss(kind, krng);
        const double zt = random_finite_dual_point(loss, krng);
        const double gamma = krng.next_uniform(0.5, 8.0);
        worst = std::max(worst,
                         std::abs(proxy_eval(loss, zt, gamma) - conjugate_eval(loss, zt)));
        ++samples;
      }
    }
    report.results.push_back(check("proxy equals conjugate where finite", samples, worst, 0.0));
  }

  {  // tangency: quadratic gradient matches the proxy derivative
    double worst = 0.0;
    long samples = 0;
    for (LossKind kind : kAllKinds) {
      SplitMix64 krng(rng.next_u64());
      int done = 0;
      while (done < 200) {
        const ScalarLoss loss = random_loss(kind, krng);
        const double zt = krng.next_uniform(-4.0, 4.0);
        bool near_kink = false;
        for (double k : proxy_kinks(loss))
          if (std::abs(zt - k) < 1e-3) near_kink = true;
        if (near_kink) continue;
        const double gamma = krng.next_uniform(0.5, 8.0);
        const ScalarGaussian upd = dual_nup_update(loss, zt, gamma);
        if (!(upd.V > 0.0)) continue;
        const double grad = (zt - upd.m) / upd.V;
        const double h = 1e-5;
        const double numeric =
            (proxy_eval(loss, zt + h, gamma) - proxy_eval(loss, zt - h, gamma)) / (2.0 * h);
        worst = std::max(worst, std::abs(grad - numeric));
        ++samples;
        ++done;
      }
    }
    report.results.push_back(check("update quadratic tangent to proxy", samples, worst, 1e-9));
  }

  {  // deciding optimality against the grid oracle
    double worst = 0.0;
    long samples = 0;
    for (LossKind kind : kAllKinds) {
      SplitMix64 krng(rng.next_u64());
      for (int i = 0; i < 200; ++i) {
        const ScalarLoss loss = random_loss(kind, krng);
        const double Vt = krng.next_uniform(0.2, 2.0);
        const double mt = krng.next_uniform(-3.0, 3.0);
        const double gamma = krng.next_uniform(0.5, 4.0);
        const double zhat = dual_decide(loss, mt, Vt, gamma);
        const double span = 6.0 * Vt + 8.0;
        const double grid = oracle::scalar_grid_argmin(
            [&](double zt) {
              return (zt - mt) * (zt - mt) / (2.0 * Vt) + proxy_eval(loss, zt, gamma);
            },
            mt - span, mt + span, 1e-4);
        worst = std::max(worst, std::abs(zhat - grid));
        ++samples;
      }
    }
    report.results.push_back(check("dual decide matches grid argmin", samples, worst, 1.0001e-4));
  }

  {  // gamma escalation lands the decision in the exact region
    double worst = 0.0;
    long samples = 0;
    const std::vector<LossKind> one_sided = {LossKind::HalfSpaceLeq, LossKind::HalfSpaceGeq,
                                             LossKind::HingeAbove, LossKind::HingeBelow};
    for (LossKind kind : one_sided) {
      SplitMix64 krng(rng.next_u64());
      for (int i = 0; i < 1000; ++i) {
        const ScalarLoss loss = random_loss(kind, krng);
        const double Vt = krng.next_uniform(0.1, 3.0);
        const double mt = krng.next_uniform(-8.0, 8.0);
        const double gamma = std::max(1.0, gamma_min(loss, mt, Vt));
        const double zhat = dual_decide(loss, mt, Vt, gamma);
        const double lo = (kind == LossKind::HalfSpaceLeq || kind == LossKind::HingeAbove)
                              ? 0.0
                              : -loss.beta;
        const double hi = (kind == LossKind::HalfSpaceLeq || kind == LossKind::HingeAbove)
                              ? loss.beta
                              : 0.0;
        worst = std::max(worst, std::max(lo - zhat, zhat - hi));
        ++samples;
      }
    }
    report.results.push_back(check("gamma escalation enforces dual region", samples,
                                   std::max(worst, 0.0), 1e-12));
  }

  {  // interval decisions identical across the admissible gamma range
    double worst = 0.0;
    long samples = 0;
    SplitMix64 krng(rng.next_u64());
    for (int i = 0; i < 500; ++i) {
      const ScalarLoss loss = random_loss(LossKind::Interval, krng);
      const double Vt = krng.next_uniform(0.1, 3.0);
      const double mt = krng.next_uniform(-8.0, 8.0);
      const double width = loss.b - loss.a;
      const double z1 = dual_decide(loss, mt, Vt, 0.5 * width);
      const double z2 = dual_decide(loss, mt, Vt, 0.75 * width);
      const double z3 = dual_decide(loss, mt, Vt, width);
      worst = std::max({worst, std::abs(z1 - z2), std::abs(z1 - z3)});
      ++samples;
    }
    report.results.push_back(check("interval decisions gamma-free on valid range", samples,
                                   worst, 0.0));
  }

  {  // beta=+inf limits coincide with the half-space/interval forms
    double worst = 0.0;
    long samples = 0;
    struct Pair {
      LossKind finite, limit;
    };
    const std::vector<Pair> pairs = {{LossKind::HingeBelow, LossKind::HalfSpaceGeq},
                                     {LossKind::HingeAbove, LossKind::HalfSpaceLeq},
                                     {LossKind::Vapnik, LossKind::Interval}};
    for (const auto& pr : pairs) {
      SplitMix64 krng(rng.next_u64());
      for (int i = 0; i < 100; ++i) {
        ScalarLoss limit = random_loss(pr.limit, krng);
        ScalarLoss exact = limit, huge = limit;
        exact.kind = pr.finite;
        exact.beta = kInf;
        huge.kind = pr.finite;
        huge.beta = 1e12;
        const double Vt = krng.next_uniform(0.2, 2.0);
        const double mt = krng.next_uniform(-3.0, 3.0);
        const double gamma = krng.next_uniform(0.5, 4.0);
        const double zt = krng.next_uniform(-3.0, 3.0);
        for (const ScalarLoss* cand : {&exact, &huge}) {
          const ScalarGaussian u1 = dual_nup_update(*cand, zt, gamma);
          const ScalarGaussian u2 = dual_nup_update(limit, zt, gamma);
          worst = std::max({worst, std::abs(u1.m - u2.m), std::abs(u1.V - u2.V)});
          worst = std::max(worst, std::abs(dual_decide(*cand, mt, Vt, gamma) -
                                           dual_decide(limit, mt, Vt, gamma)));
          worst = std::max(worst, std::abs(proxy_eval(*cand, zt, gamma) -
                                           proxy_eval(limit, zt, gamma)));
          ++samples;
        }
      }
    }
    report.results.push_back(check("half-space/interval limits of finite slopes", samples,
                                   worst, 1e-9));
  }

  return report;
}

SuiteReport verify_gauss() {
  SuiteReport report{"gauss", {}};
  SplitMix64 rng(0x9a550ULL);

  {  // dualization round trips on random SPD messages
    double worst = 0.0;
    long samples = 0;
    for (int i = 0; i < 200; ++i) {
      const int dim = 1 + static_cast<int>(rng.next_u64() % 6);
      Gaussian g{random_vec(dim, rng), random_spd(dim, rng)};
      const Gaussian f2 = dualize_forward(dualize_forward(g));
      const Gaussian b2 = dualize_backward(dualize_backward(g));
      worst = std::max({worst, (f2.m - g.m).cwiseAbs().maxCoeff(),
                        (f2.V - g.V).cwiseAbs().maxCoeff(),
                        (b2.m - g.m).cwiseAbs().maxCoeff(),
                        (b2.V - g.V).cwiseAbs().maxCoeff()});
      ++samples;
    }
    report.results.push_back(check("dualization round trip", samples, worst, 1e-12));
  }

  {  // the two primal recovery expressions agree at the dual marginal mean
    double worst = 0.0;
    long samples = 0;
    for (int i = 0; i < 200; ++i) {
      const int dim = 1 + static_cast<int>(rng.next_u64() % 4);
      Gaussian fwd{random_vec(dim, rng), random_spd(dim, rng)};
      Gaussian bwd{random_vec(dim, rng), random_spd(dim, rng)};
      const DualMarginal dm = dual_marginal(fwd, bwd);
      const Vec z = dm.xi_tilde;
      worst = std::max(worst, (primal_from_dual(fwd, z) - primal_from_dual_bwd(bwd, z))
                                  .cwiseAbs()
                                  .maxCoeff());
      ++samples;
    }
    report.results.push_back(check("recovery identity both ways", samples, worst, 1e-10));
  }

  {  // scalar observation equals dense Gaussian conditioning
    double worst = 0.0;
    long samples = 0;
    for (int i = 0; i < 200; ++i) {
      const int dim = 1 + static_cast<int>(rng.next_u64() % 6);
      Gaussian x{random_vec(dim, rng), random_spd(dim, rng)};
      RowVec c = random_vec(dim, rng).transpose();
      const ScalarGaussian yb{rng.next_normal(), rng.next_uniform(0.05, 2.0)};
      const Gaussian post = observe_scalar(x, c, yb);

      const Mat W = x.V.ldlt().solve(Mat::Identity(dim, dim)) +
                    c.transpose() * c / yb.V;
      const Vec rhs = x.V.ldlt().solve(x.m) + c.transpose() * (yb.m / yb.V);
      const Mat Vd = W.ldlt().solve(Mat::Identity(dim, dim));
      const Vec md = W.ldlt().solve(rhs);
      worst = std::max({worst, (post.m - md).cwiseAbs().maxCoeff(),
                        (post.V - Vd).cwiseAbs().maxCoeff()});
      ++samples;
    }
    report.results.push_back(check("scalar observation vs dense conditioning", samples, worst,
                                   1e-9));
  }

  {  // covariance symmetry through predict/observe chains
    double worst = 0.0;
    long samples = 0;
    for (int i = 0; i < 50; ++i) {
      const int dim = 2 + static_cast<int>(rng.next_u64() % 4);
      Gaussian x{random_vec(dim, rng), random_spd(dim, rng)};
      Mat A = Mat::Zero(dim, dim), B = Mat::Zero(dim, 1);
      for (int r = 0; r < dim; ++r) {
        B(r, 0) = rng.next_normal();
        for (int s = 0; s < dim; ++s) A(r, s) = rng.next_normal();
      }
      Gaussian u{Vec::Zero(1), Mat::Identity(1, 1)};
      for (int t = 0; t < 10; ++t) {
        x = predict(x, A / 1.5, B, u);
        RowVec c = random_vec(dim, rng).transpose();
        x = observe_scalar(x, c, ScalarGaussian{rng.next_normal(), 1.0});
        worst = std::max(worst, (x.V - x.V.transpose()).cwiseAbs().maxCoeff());
        ++samples;
      }
    }
    report.results.push_back(check("covariance symmetry preserved", samples, worst, 1e-12));
  }

  return report;
}

SuiteReport verify_oracle() {
  SuiteReport report{"oracle", {}};

  {  // KKT certificate on seeded instances
    double worst = 0.0;
    long samples = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto gen = generate_instance({4, 2, 2, 8}, seed);
      const auto sol = oracle::active_set_qp(gen.instance);
      worst = std::max(worst, sol.stationarity);
      const auto report_feas = feasibility_check(gen.instance, sol.y, sol.u, kInf);
      worst = std::max(worst, report_feas.max_violation);
      for (Eigen::Index i = 0; i < sol.multipliers.size(); ++i) {
        const double lam = sol.multipliers(i);
        const double wrong = sol.active[static_cast<std::size_t>(i)].side == oracle::Side::Upper
                                 ? -lam
                                 : lam;
        worst = std::max(worst, wrong);
      }
      ++samples;
    }
    report.results.push_back(check("active-set KKT certificate", samples, worst, 1e-9));
  }

  {  // exhaustive enumeration agrees on small instances
    double worst = 0.0;
    long samples = 0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const auto gen = generate_instance({2, 1, 2, 4}, seed);
      const auto fast = oracle::active_set_qp(gen.instance);
      const auto slow = oracle::enumerate_qp(gen.instance);
      worst = std::max({worst, std::abs(fast.J - slow.J),
                        (fast.x1 - slow.x1).cwiseAbs().maxCoeff(),
                        (fast.u - slow.u).cwiseAbs().maxCoeff()});
      ++samples;
    }
    report.results.push_back(check("active set vs exhaustive enumeration", samples, worst,
                                   1e-9));
  }

  {  // projected-gradient fallback agrees
    double worst = 0.0;
    long samples = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto gen = generate_instance({3, 1, 2, 5}, seed);
      const auto exact = oracle::active_set_qp(gen.instance);
      const auto pg = oracle::projected_gradient(gen.instance);
      worst = std::max(worst,
                       std::abs(pg.J - exact.J) / std::max(1e-12, std::abs(exact.J)));
      ++samples;
    }
    report.results.push_back(check("projected-gradient fallback agreement", samples, worst,
                                   1e-6));
  }

  return report;
}

SuiteReport verify_solvers() {
  SuiteReport report{"solvers", {}};
  SplitMix64 rng(0x50e1e5ULL);

  {  // smoother equals the dense joint-Gaussian solve
    double worst = 0.0;
    long samples = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const int M = 1 + static_cast<int>(rng.next_u64() % 4);
      const int L = 1 + static_cast<int>(rng.next_u64() % 2);
      const int K = 1 + static_cast<int>(rng.next_u64() % 3);
      const int N = 1 + static_cast<int>(rng.next_u64() % 5);
      ProblemInstance inst;
      inst.model.N = N;
      inst.model.A = Mat::Zero(M, M);
      inst.model.B = Mat::Zero(M, L);
      inst.model.C = Mat::Zero(K, M);
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) inst.model.A(i, j) = 0.5 * rng.next_normal();
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < L; ++j) inst.model.B(i, j) = rng.next_normal();
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < M; ++j) inst.model.C(i, j) = rng.next_normal();
      inst.priors.m_x1 = random_vec(M, rng);
      inst.priors.V_x1 = random_spd(M, rng);
      inst.priors.m_u = random_vec(L, rng);
      inst.priors.V_u = random_spd(L, rng);

      std::vector<std::vector<ScalarGaussian>> msgs(
          N, std::vector<ScalarGaussian>(K, ScalarGaussian{0.0, kInf}));
      for (int n = 0; n < N; ++n)
        for (int k = 0; k < K; ++k)
          if (rng.next_unit() < 0.7)
            msgs[n][k] = ScalarGaussian{rng.next_normal(), rng.next_uniform(0.1, 2.0)};

      const SmootherResult sm = smoother(inst, msgs);

      // Dense route: rows through simulate() with basis vectors.
      const int D = M + N * L;
      const Mat rows = output_rows_by_simulation(inst);
      Mat P = Mat::Zero(D, D);
      P.topLeftCorner(M, M) = inst.priors.V_x1.ldlt().solve(Mat::Identity(M, M));
      const Mat Wu = inst.priors.V_u.ldlt().solve(Mat::Identity(L, L));
      Vec mbar(D);
      mbar.head(M) = inst.priors.m_x1;
      for (int n = 0; n < N; ++n) {
        P.block(M + n * L, M + n * L, L, L) = Wu;
        mbar.segment(M + n * L, L) = inst.priors.m_u;
      }
      Mat W = P;
      Vec rhs = P * mbar;
      for (int n = 0; n < N; ++n)
        for (int k = 0; k < K; ++k) {
          const auto& msg = msgs[n][k];
          if (!msg.informative()) continue;
          const RowVec g = rows.row(static_cast<Eigen::Index>(n) * K + k);
          W += g.transpose() * g / msg.V;
          rhs += g.transpose() * (msg.m / msg.V);
        }
      const Vec w = W.ldlt().solve(rhs);
      Vec x1d = w.head(M);
      Mat ud(N, L);
      for (int n = 0; n < N; ++n) ud.row(n) = w.segment(M + n * L, L).transpose();
      const Mat yd = simulate(inst.model, x1d, ud).outputs;

      worst = std::max({worst, (sm.x1 - x1d).cwiseAbs().maxCoeff(),
                        (sm.u - ud).cwiseAbs().maxCoeff(),
                        (sm.y - yd).cwiseAbs().maxCoeff()});
      ++samples;
    }
    report.results.push_back(check("smoother vs dense joint solve", samples, worst, 1e-8));
  }

  {  // solver vs oracle on seeded instances, plus complementary slackness
    double worst_gap = 0.0, worst_feas = 0.0, worst_cs = 0.0;
    long samples = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto gen = generate_instance({4, 2, 2, 8}, seed);
      const auto exact = oracle::active_set_qp(gen.instance);
      SolverConfig cfg;
      const Solution sol = solve_iffbdd(gen.instance, cfg);
      worst_gap = std::max(worst_gap, std::abs(sol.J - exact.J) / std::abs(exact.J));
      worst_feas =
          std::max(worst_feas, feasibility_check(gen.instance, sol, kInf).max_violation);
      for (const auto& c : gen.instance.constraints) {
        const double y = sol.y_hat(c.n - 1, c.k - 1);
        const double zt = sol.z_tilde_hat(c.n - 1, c.k - 1);
        const bool at_lower = std::abs(y - c.loss.lower_bound()) < 1e-6;
        const bool at_upper = std::abs(y - c.loss.upper_bound()) < 1e-6;
        if (!at_lower && !at_upper) worst_cs = std::max(worst_cs, std::abs(zt));
        if (at_upper) worst_cs = std::max(worst_cs, -zt);
        if (at_lower && !at_upper) worst_cs = std::max(worst_cs, zt);
      }
      ++samples;
    }
    report.results.push_back(check("iffbdd objective matches oracle", samples, worst_gap, 1e-6));
    report.results.push_back(
        check("iffbdd hard constraints satisfied", samples, worst_feas, 1e-6));
    report.results.push_back(
        check("iffbdd complementary slackness", samples, std::max(worst_cs, 0.0), 1e-6));
  }

  {  // input-side equivalence: ibffd and iffbdd vs oracle
    double worst = 0.0;
    long samples = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SplitMix64 irng(seed * 977);
      const int M = 3, L = 2, K = 1, N = 5;
      ProblemInstance inst;
      inst.model.N = N;
      inst.model.A = Mat::Zero(M, M);
      inst.model.B = Mat::Zero(M, L);
      inst.model.C = Mat::Zero(K, M);
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) inst.model.A(i, j) = 0.5 * irng.next_normal();
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < L; ++j) inst.model.B(i, j) = irng.next_normal();
      for (int j = 0; j < M; ++j) inst.model.C(0, j) = irng.next_normal();
      inst.priors.m_x1 = Vec::Zero(M);
      inst.priors.V_x1 = Mat::Identity(M, M) / M;
      inst.priors.m_u = random_vec(L, irng);
      inst.priors.V_u = Mat::Identity(L, L) / L;
      for (int n = 1; n <= N; ++n)
        for (int l = 1; l <= L; ++l) {
          const double lo = irng.next_uniform(-1.0, 0.0);
          inst.constraints.push_back({n, l, ConstraintTarget::Input,
                                       ScalarLoss::interval(lo, lo + irng.next_uniform(0.2, 1.0))});
        }
      const auto exact = oracle::active_set_qp(inst);
      SolverConfig cfg;
      const Solution s1 = solve_ibffd(inst, cfg);
      const Solution s2 = solve_iffbdd(inst, cfg);
      worst = std::max({worst, std::abs(s1.J - exact.J) / std::max(1.0, std::abs(exact.J)),
                        std::abs(s2.J - exact.J) / std::max(1.0, std::abs(exact.J))});
      ++samples;
    }
    report.results.push_back(
        check("input-constrained solver equivalence vs oracle", samples, worst, 1e-6));
  }

  return report;
}

std::vector<SuiteReport> verify_suite(const std::string& name) {
  if (name == "losses") return {verify_losses()};
  if (name == "gauss") return {verify_gauss()};
  if (name == "oracle") return {verify_oracle()};
  if (name == "solvers") return {verify_solvers()};
  if (name == "all")
    return {verify_losses(), verify_gauss(), verify_oracle(), verify_solvers()};
  throw std::invalid_argument("unknown verify suite \"" + name +
                              "\" (expected losses, gauss, oracle, solvers, all)");
}

void print_report(std::ostream& out, const SuiteReport& report) {
  for (const auto& r : report.results) {
    out << (r.pass ? "[pass] " : "[FAIL] ") << report.suite << ": " << r.name
        << "  samples=" << r.samples << "  worst=" << r.worst << "  tol=" << r.tol << '\n';
  }
}

}  // namespace verify
}  // namespace dualnup
