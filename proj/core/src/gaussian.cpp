#include "dualnup/gaussian.hpp"

#include <stdexcept>

namespace dualnup {

namespace {

thread_local std::uint64_t g_clamped = 0;

void check_square(const Gaussian& msg) {
  if (msg.V.rows() != msg.V.cols() || msg.V.rows() != msg.m.size())
    throw std::invalid_argument("gaussian: dimension mismatch between mean and covariance");
}

Mat symmetrize(const Mat& V) { return 0.5 * (V + V.transpose()); }

// Inverse of a small symmetric matrix via LDLT; rejects singular input.
Mat spd_inverse(const Mat& V, const char* what) {
  Eigen::LDLT<Mat> ldlt(symmetrize(V));
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().cwiseAbs().minCoeff() < 1e-300)
    throw std::runtime_error(what);
  return ldlt.solve(Mat::Identity(V.rows(), V.cols()));
}

}  // namespace

Gaussian dualize_forward(const Gaussian& msg) {
  check_square(msg);
  Mat W = spd_inverse(msg.V, "non-invertible covariance");
  return Gaussian{W * msg.m, symmetrize(W)};
}

Gaussian dualize_backward(const Gaussian& msg) {
  check_square(msg);
  Mat W = spd_inverse(msg.V, "non-invertible covariance");
  return Gaussian{-(W * msg.m), symmetrize(W)};
}

DualMarginal dual_marginal(const Gaussian& fwd, const Gaussian& bwd) {
  if (fwd.dim() != bwd.dim())
    throw std::invalid_argument("dual_marginal: dimension mismatch");
  Mat W = spd_inverse(fwd.V + bwd.V, "degenerate marginal");
  return DualMarginal{symmetrize(W), W * (fwd.m - bwd.m)};
}

Vec primal_from_dual(const Gaussian& fwd, const Vec& z_tilde_hat) {
  if (fwd.dim() != z_tilde_hat.size())
    throw std::invalid_argument("primal_from_dual: dimension mismatch");
  return fwd.m - fwd.V * z_tilde_hat;
}

Vec primal_from_dual_bwd(const Gaussian& bwd, const Vec& z_tilde_hat) {
  if (bwd.dim() != z_tilde_hat.size())
    throw std::invalid_argument("primal_from_dual: dimension mismatch");
  return bwd.m + bwd.V * z_tilde_hat;
}

double primal_from_dual(double m_fwd, double V_fwd, double z_tilde_hat) {
  return m_fwd - V_fwd * z_tilde_hat;
}

double primal_from_dual_bwd(double m_bwd, double V_bwd, double z_tilde_hat) {
  return m_bwd + V_bwd * z_tilde_hat;
}

Gaussian predict(const Gaussian& x, const Mat& A, const Mat& B, const Gaussian& u) {
  if (A.cols() != x.dim() || B.cols() != u.dim() || A.rows() != B.rows())
    throw std::invalid_argument("predict: dimension mismatch");
  Gaussian out;
  out.m = A * x.m + B * u.m;
  out.V = symmetrize(A * x.V * A.transpose() + B * u.V * B.transpose());
  return out;
}

Gaussian observe_scalar(const Gaussian& x, const RowVec& c, const ScalarGaussian& y_bwd) {
  if (c.size() != x.dim()) throw std::invalid_argument("observe_scalar: dimension mismatch");
  if (!y_bwd.informative()) return x;

  Vec Vc = x.V * c.transpose();
  double s = c.dot(Vc);
  if (s < 0.0) {
    ++g_clamped;
    s = 0.0;
  }
  const double innov = y_bwd.V + s;
  if (!(innov > 0.0)) throw std::runtime_error("observe_scalar: nonpositive innovation variance");
  const double G = 1.0 / innov;

  Gaussian out;
  out.V = symmetrize(x.V - G * (Vc * Vc.transpose()));
  out.m = x.m + Vc * (G * (y_bwd.m - c.dot(x.m)));
  return out;
}

Gaussian observe_scalar_factor(const Gaussian& x, const RowVec& c, const ScalarFactor& y_bwd) {
  if (c.size() != x.dim()) throw std::invalid_argument("observe_scalar: dimension mismatch");
  if (!(y_bwd.W >= 0.0)) throw std::invalid_argument("observe_scalar: negative factor precision");

  Vec Vc = x.V * c.transpose();
  double s = c.dot(Vc);
  if (s < 0.0) {
    ++g_clamped;
    s = 0.0;
  }
  const double denom = 1.0 + y_bwd.W * s;
  if (!(denom > 0.0)) throw std::runtime_error("observe_scalar: nonpositive innovation variance");

  Gaussian out;
  out.V = symmetrize(x.V - (y_bwd.W / denom) * (Vc * Vc.transpose()));
  out.m = x.m + Vc * ((y_bwd.xi - y_bwd.W * c.dot(x.m)) / denom);
  return out;
}

std::uint64_t clamped_variance_count() { return g_clamped; }
void reset_clamped_variance_count() { g_clamped = 0; }

}  // namespace dualnup
