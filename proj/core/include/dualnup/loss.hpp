#pragma once

#include <string>

#include "dualnup/gaussian.hpp"

namespace dualnup {

/// Scalar convex loss attached to one model variable. HingeBelow penalizes
/// values under the lower anchor a (so it enforces z >= a when steep),
/// HingeAbove penalizes values over b. The half-space and interval kinds are
/// the beta = +inf limits of the hinges and of the Vapnik loss.
enum class LossKind {
  L1,            // beta * |z - a|
  HingeBelow,    // beta * (a - z)_+
  HingeAbove,    // beta * (z - b)_+
  Vapnik,        // 2*beta * dist(z, [a, b])
  HalfSpaceGeq,  // indicator of z >= a
  HalfSpaceLeq,  // indicator of z <= b
  Interval,      // indicator of a <= z <= b
};

struct ScalarLoss {
  LossKind kind = LossKind::Interval;
  double a = 0.0;     // lower anchor
  double b = 0.0;     // upper anchor
  double beta = kInf; // slope, > 0; +inf only for the indicator limits

  static ScalarLoss l1(double a, double beta);
  static ScalarLoss hinge_below(double a, double beta);
  static ScalarLoss hinge_above(double b, double beta);
  static ScalarLoss vapnik(double a, double b, double beta);
  static ScalarLoss geq(double a);
  static ScalarLoss leq(double b);
  static ScalarLoss interval(double a, double b);

  /// Throws std::invalid_argument on bad parameters (beta <= 0, a > b,
  /// L1 with infinite beta).
  void validate() const;

  /// True for indicator-type losses, including hinges/Vapnik with beta=+inf.
  bool is_hard() const;

  /// Hard bounds implied by the anchors, +-inf where one side is absent.
  /// Used by feasibility reporting for every kind.
  double lower_bound() const;
  double upper_bound() const;
};

std::string to_string(LossKind kind);

/// Per-constraint mutable state owned by a single solver run: the proxy
/// slope and the current backward message in dual parameters.
struct DualNupState {
  double gamma = 1.0;   // > 0 or +inf
  double m_bwd = 0.0;   // dual backward mean
  double V_bwd = 0.0;   // dual backward variance, >= 0
};

/// Loss value kappa(z) in [0, +inf].
double primal_eval(const ScalarLoss& loss, double z);

/// Convex conjugate kappa*(z_tilde) = sup_z (z_tilde*z - kappa(z)).
double conjugate_eval(const ScalarLoss& loss, double z_tilde);

/// Finite-slope proxy for the conjugate: equals kappa* wherever kappa* is
/// finite; the infinite outer slopes are replaced by slopes steepened by
/// gamma. With gamma = +inf the proxy is kappa* itself.
double proxy_eval(const ScalarLoss& loss, double z_tilde, double gamma);

/// Closed-form refresh of the dual backward message: the quadratic with
/// these parameters is tangent to the proxy at z_tilde. Absolute-value
/// factors are floored at 1e-12 so the returned variance stays positive for
/// finite gamma (a zero-variance dual message would pin z_tilde and can
/// deadlock the iteration). With gamma = +inf the variance is exactly 0 and
/// the message acts as a pure linear tilt.
ScalarGaussian dual_nup_update(const ScalarLoss& loss, double z_tilde, double gamma);

/// Exact scalar decision against the proxy:
/// argmin over zt of (zt - m_fwd)^2 / (2 V_fwd) + proxy(zt).
/// Piecewise soft-threshold form; boundary ties follow the tabulated
/// closed/open inequalities.
double dual_decide(const ScalarLoss& loss, double m_fwd, double V_fwd, double gamma);

/// Smallest gamma that keeps the next dual_decide inside the region where
/// the proxy equals the conjugate. May be <= 0 when no escalation is
/// needed; callers take max(current, gamma_min). For Interval the decision
/// is gamma-free and any gamma in [(b-a)/2, b-a] is valid; the lower end is
/// returned.
double gamma_min(const ScalarLoss& loss, double m_fwd, double V_fwd);

/// Primal-side reflection refresh used by the primal solvers; defined only
/// for the finite-slope hinge family (Vapnik as the product of its two
/// hinges). Hard constraints must be given a finite-beta hinge surrogate by
/// the caller; L1 has no primal-side update here.
ScalarGaussian primal_nup_update(const ScalarLoss& loss, double z);

/// argmin_z (z - m)^2 / (2 V) + kappa(z), closed form per kind.
double primal_prox(const ScalarLoss& loss, double m, double V);

}  // namespace dualnup
