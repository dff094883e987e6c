#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>

namespace dualnup {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using RowVec = Eigen::RowVectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Gaussian message in mean/covariance form. V is kept symmetric PSD by the
/// operations below; an unnormalized quadratic is all that is ever needed, so
/// no scale factor is tracked.
struct Gaussian {
  Vec m;
  Mat V;

  int dim() const { return static_cast<int>(m.size()); }
};

/// Gaussian message in precision form, W = V^-1 and xi = W m.
struct CanonicalGaussian {
  Mat W;
  Vec xi;
};

/// Scalar Gaussian message. V = +inf is the explicit uninformative sentinel
/// (never approximated by a huge finite number), V = 0 is an exact pin.
struct ScalarGaussian {
  double m = 0.0;
  double V = kInf;

  bool informative() const { return V != kInf; }
};

/// Scalar Gaussian factor exp(xi*z - W*z^2/2) in precision form. W = 0 with
/// xi != 0 is a valid improper factor (a pure linear tilt); it arises from
/// zero-variance backward messages on the convex-dual side.
struct ScalarFactor {
  double xi = 0.0;
  double W = 0.0;
};

/// Parameters of the dual-side marginal: W_tilde = (Vf + Vb)^-1 and
/// xi_tilde = W_tilde (mf - mb). The dual marginal has mean xi_tilde and
/// covariance W_tilde.
struct DualMarginal {
  Mat W_tilde;
  Vec xi_tilde;
};

/// Forward-message dualization: (m, V) -> (W m, W) with W = V^-1.
/// Involutive: applying it twice recovers the input.
Gaussian dualize_forward(const Gaussian& msg);

/// Backward-message dualization: (m, V) -> (-W m, W). Differs from the
/// forward map exactly by negation of the mean; also involutive.
Gaussian dualize_backward(const Gaussian& msg);

/// Dual marginal of a forward/backward message pair sharing one edge.
DualMarginal dual_marginal(const Gaussian& fwd, const Gaussian& bwd);

/// Primal estimate recovered from a dual decision: mf - Vf * z_tilde.
Vec primal_from_dual(const Gaussian& fwd, const Vec& z_tilde_hat);

/// Companion form of the recovery identity: mb + Vb * z_tilde. Both forms
/// agree when z_tilde is the dual marginal mean of a consistent pair.
Vec primal_from_dual_bwd(const Gaussian& bwd, const Vec& z_tilde_hat);

double primal_from_dual(double m_fwd, double V_fwd, double z_tilde_hat);
double primal_from_dual_bwd(double m_bwd, double V_bwd, double z_tilde_hat);

/// Kalman time update: mean A mx + B mu, covariance A Vx A' + B Vu B',
/// symmetrized.
Gaussian predict(const Gaussian& x, const Mat& A, const Mat& B, const Gaussian& u);

/// Scalar observation update for the output y = c x with backward message
/// y_bwd. The gain G = 1/(Vb + c V c') is a scalar reciprocal. Handles the
/// uninformative sentinel (no-op) and Vb = 0 (exact measurement).
Gaussian observe_scalar(const Gaussian& x, const RowVec& c, const ScalarGaussian& y_bwd);

/// Same update with the backward message as a precision-form factor; valid
/// for W = 0 improper factors, where only the mean moves.
Gaussian observe_scalar_factor(const Gaussian& x, const RowVec& c, const ScalarFactor& y_bwd);

/// Count of negative posterior variances clamped to zero since the last
/// reset (roundoff hygiene, thread-local).
std::uint64_t clamped_variance_count();
void reset_clamped_variance_count();

}  // namespace dualnup
