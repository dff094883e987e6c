#include "dualnup/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dualnup {

namespace {

constexpr double kAbsFloor = 1e-12;

double floored_abs(double x) { return std::max(std::abs(x), kAbsFloor); }

// Hinges and Vapnik with beta = +inf behave exactly as their indicator
// limits; evaluating through the reduced kind keeps the limits exact.
ScalarLoss reduced(const ScalarLoss& loss) {
  if (loss.beta != kInf) return loss;
  switch (loss.kind) {
    case LossKind::HingeBelow:
      return ScalarLoss::geq(loss.a);
    case LossKind::HingeAbove:
      return ScalarLoss::leq(loss.b);
    case LossKind::Vapnik:
      return ScalarLoss::interval(loss.a, loss.b);
    default:
      return loss;
  }
}

ScalarGaussian gaussian_product(const ScalarGaussian& g1, const ScalarGaussian& g2) {
  if (g1.V == 0.0) return g1;
  if (g2.V == 0.0) return g2;
  const double W = 1.0 / g1.V + 1.0 / g2.V;
  return ScalarGaussian{(g1.m / g1.V + g2.m / g2.V) / W, 1.0 / W};
}

}  // namespace

ScalarLoss ScalarLoss::l1(double a, double beta) { return ScalarLoss{LossKind::L1, a, a, beta}; }
ScalarLoss ScalarLoss::hinge_below(double a, double beta) {
  return ScalarLoss{LossKind::HingeBelow, a, 0.0, beta};
}
ScalarLoss ScalarLoss::hinge_above(double b, double beta) {
  return ScalarLoss{LossKind::HingeAbove, 0.0, b, beta};
}
ScalarLoss ScalarLoss::vapnik(double a, double b, double beta) {
  return ScalarLoss{LossKind::Vapnik, a, b, beta};
}
ScalarLoss ScalarLoss::geq(double a) { return ScalarLoss{LossKind::HalfSpaceGeq, a, 0.0, kInf}; }
ScalarLoss ScalarLoss::leq(double b) { return ScalarLoss{LossKind::HalfSpaceLeq, 0.0, b, kInf}; }
ScalarLoss ScalarLoss::interval(double a, double b) {
  return ScalarLoss{LossKind::Interval, a, b, kInf};
}

void ScalarLoss::validate() const {
  if (!(beta > 0.0)) throw std::invalid_argument("loss: beta must be positive");
  if (kind == LossKind::L1 && beta == kInf)
    throw std::invalid_argument("loss: L1 requires a finite slope");
  if ((kind == LossKind::Vapnik || kind == LossKind::Interval) && !(a <= b))
    throw std::invalid_argument("loss: requires a <= b");
  if (!std::isfinite(a) && (kind == LossKind::L1 || kind == LossKind::HingeBelow ||
                            kind == LossKind::Vapnik || kind == LossKind::HalfSpaceGeq ||
                            kind == LossKind::Interval))
    throw std::invalid_argument("loss: lower anchor must be finite");
  if (!std::isfinite(b) && (kind == LossKind::HingeAbove || kind == LossKind::Vapnik ||
                            kind == LossKind::HalfSpaceLeq || kind == LossKind::Interval))
    throw std::invalid_argument("loss: upper anchor must be finite");
}

bool ScalarLoss::is_hard() const {
  switch (kind) {
    case LossKind::HalfSpaceGeq:
    case LossKind::HalfSpaceLeq:
    case LossKind::Interval:
      return true;
    case LossKind::HingeBelow:
    case LossKind::HingeAbove:
    case LossKind::Vapnik:
      return beta == kInf;
    case LossKind::L1:
      return false;
  }
  return false;
}

double ScalarLoss::lower_bound() const {
  switch (kind) {
    case LossKind::L1:
      return a;
    case LossKind::HingeBelow:
    case LossKind::HalfSpaceGeq:
    case LossKind::Vapnik:
    case LossKind::Interval:
      return a;
    default:
      return -kInf;
  }
}

double ScalarLoss::upper_bound() const {
  switch (kind) {
    case LossKind::L1:
      return a;
    case LossKind::HingeAbove:
    case LossKind::HalfSpaceLeq:
    case LossKind::Vapnik:
    case LossKind::Interval:
      return b;
    default:
      return kInf;
  }
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::L1:
      return "l1";
    case LossKind::HingeBelow:
      return "hinge_below";
    case LossKind::HingeAbove:
      return "hinge_above";
    case LossKind::Vapnik:
      return "vapnik";
    case LossKind::HalfSpaceGeq:
      return "half_space_geq";
    case LossKind::HalfSpaceLeq:
      return "half_space_leq";
    case LossKind::Interval:
      return "interval";
  }
  return "unknown";
}

double primal_eval(const ScalarLoss& raw, double z) {
  const ScalarLoss loss = reduced(raw);
  const double a = loss.a, b = loss.b, beta = loss.beta;
  switch (loss.kind) {
    case LossKind::L1:
      return beta * std::abs(z - a);
    case LossKind::HingeBelow:
      return z < a ? beta * (a - z) : 0.0;
    case LossKind::HingeAbove:
      return z <= b ? 0.0 : beta * (z - b);
    case LossKind::Vapnik:
      if (z < a) return 2.0 * beta * (a - z);
      if (z <= b) return 0.0;
      return 2.0 * beta * (z - b);
    case LossKind::HalfSpaceGeq:
      return z >= a ? 0.0 : kInf;
    case LossKind::HalfSpaceLeq:
      return z <= b ? 0.0 : kInf;
    case LossKind::Interval:
      return (z >= a && z <= b) ? 0.0 : kInf;
  }
  return kInf;
}

double conjugate_eval(const ScalarLoss& raw, double zt) {
  const ScalarLoss loss = reduced(raw);
  const double a = loss.a, b = loss.b, beta = loss.beta;
  switch (loss.kind) {
    case LossKind::L1:
      if (zt < -beta || zt > beta) return kInf;
      return a * zt;
    case LossKind::HingeBelow:
      if (zt < -beta || zt > 0.0) return kInf;
      return a * zt;
    case LossKind::HingeAbove:
      if (zt < 0.0 || zt > beta) return kInf;
      return b * zt;
    case LossKind::Vapnik:
      if (zt < -2.0 * beta || zt > 2.0 * beta) return kInf;
      return zt <= 0.0 ? a * zt : b * zt;
    case LossKind::HalfSpaceGeq:
      return zt <= 0.0 ? a * zt : kInf;
    case LossKind::HalfSpaceLeq:
      return zt >= 0.0 ? b * zt : kInf;
    case LossKind::Interval:
      return zt <= 0.0 ? a * zt : b * zt;
  }
  return kInf;
}

double proxy_eval(const ScalarLoss& raw, double zt, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("proxy_eval: gamma must be positive");
  if (gamma == kInf) return conjugate_eval(raw, zt);
  const ScalarLoss loss = reduced(raw);
  const double a = loss.a, b = loss.b, beta = loss.beta;
  switch (loss.kind) {
    case LossKind::L1:
      if (zt < -beta) return (a - gamma) * zt - beta * gamma;
      if (zt <= beta) return a * zt;
      return (a + gamma) * zt - beta * gamma;
    case LossKind::HingeBelow:
      if (zt < -beta) return (a - gamma) * zt - beta * gamma;
      if (zt <= 0.0) return a * zt;
      return (a + gamma) * zt;
    case LossKind::HingeAbove:
      if (zt < 0.0) return (b - gamma) * zt;
      if (zt <= beta) return b * zt;
      return (b + gamma) * zt - beta * gamma;
    case LossKind::Vapnik:
      if (zt < -2.0 * beta) return (a - gamma) * zt - 2.0 * beta * gamma;
      if (zt <= 0.0) return a * zt;
      if (zt <= 2.0 * beta) return b * zt;
      return (b + gamma) * zt - 2.0 * beta * gamma;
    case LossKind::HalfSpaceGeq:
      return zt <= 0.0 ? a * zt : (a + gamma) * zt;
    case LossKind::HalfSpaceLeq:
      return zt < 0.0 ? (b - gamma) * zt : b * zt;
    case LossKind::Interval:
      return zt <= 0.0 ? a * zt : b * zt;
  }
  return kInf;
}

ScalarGaussian dual_nup_update(const ScalarLoss& raw, double zt, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("dual_nup_update: gamma must be positive");
  const ScalarLoss loss = reduced(raw);
  const double a = loss.a, b = loss.b, beta = loss.beta;
  const bool inf_gamma = (gamma == kInf);

  // p, q are the floored absolute-value factors of the tabulated update for
  // the given kind; m_num_scale carries the gamma-free part of the mean.
  double p = 0.0, q = 0.0, anchor_term = 0.0, slope_term = 0.0;
  switch (loss.kind) {
    case LossKind::L1:
      p = floored_abs(zt + beta);
      q = floored_abs(zt - beta);
      anchor_term = 2.0 * a * p * q;
      slope_term = beta * (q - p);
      break;
    case LossKind::HingeBelow:
      p = floored_abs(zt + beta);
      q = floored_abs(zt);
      anchor_term = 2.0 * a * p * q;
      slope_term = beta * q;
      break;
    case LossKind::HingeAbove:
      p = floored_abs(zt);
      q = floored_abs(zt - beta);
      anchor_term = 2.0 * b * p * q;
      slope_term = -beta * p;
      break;
    case LossKind::Vapnik:
      if (zt <= 0.0) {
        p = floored_abs(zt + 2.0 * beta);
        q = floored_abs(zt);
        anchor_term = 2.0 * a * p * q;
        slope_term = 2.0 * beta * q;
      } else {
        p = floored_abs(zt);
        q = floored_abs(zt - 2.0 * beta);
        anchor_term = 2.0 * b * p * q;
        slope_term = -2.0 * beta * p;
      }
      break;
    case LossKind::HalfSpaceGeq: {
      const double z = floored_abs(zt);
      if (inf_gamma) return ScalarGaussian{-z, 0.0};
      return ScalarGaussian{-(gamma + 2.0 * a) * z / gamma, 2.0 * z / gamma};
    }
    case LossKind::HalfSpaceLeq: {
      const double z = floored_abs(zt);
      if (inf_gamma) return ScalarGaussian{z, 0.0};
      return ScalarGaussian{(gamma - 2.0 * b) * z / gamma, 2.0 * z / gamma};
    }
    case LossKind::Interval: {
      const double z = floored_abs(zt);
      if (zt <= 0.0) {
        if (inf_gamma) return ScalarGaussian{-z, 0.0};
        return ScalarGaussian{-(gamma + 2.0 * a) * z / gamma, 2.0 * z / gamma};
      }
      if (inf_gamma) return ScalarGaussian{z, 0.0};
      return ScalarGaussian{(gamma - 2.0 * b) * z / gamma, 2.0 * z / gamma};
    }
  }

  // Finite-beta rows of the table:
  //   m_bwd = -(anchor_term + gamma*slope_term) / (gamma*(p + q))
  //   V_bwd = 2 p q / (gamma*(p + q))
  if (inf_gamma) return ScalarGaussian{-slope_term / (p + q), 0.0};
  const double den = gamma * (p + q);
  return ScalarGaussian{-(anchor_term + gamma * slope_term) / den, 2.0 * p * q / den};
}

double dual_decide(const ScalarLoss& raw, double mf, double Vf, double gamma) {
  if (!(Vf > 0.0)) throw std::invalid_argument("dual_decide: forward variance must be positive");
  if (!(gamma > 0.0)) throw std::invalid_argument("dual_decide: gamma must be positive");
  const ScalarLoss loss = reduced(raw);
  const double a = loss.a, b = loss.b, beta = loss.beta;
  switch (loss.kind) {
    case LossKind::L1:
      if (mf < (a - gamma) * Vf - beta) return mf - (a - gamma) * Vf;
      if (mf < a * Vf - beta) return -beta;
      if (mf < a * Vf + beta) return mf - a * Vf;
      if (mf < (a + gamma) * Vf + beta) return beta;
      return mf - (a + gamma) * Vf;
    case LossKind::HingeBelow:
      if (mf < (a - gamma) * Vf - beta) return mf - (a - gamma) * Vf;
      if (mf < a * Vf - beta) return -beta;
      if (mf < a * Vf) return mf - a * Vf;
      if (mf < (a + gamma) * Vf) return 0.0;
      return mf - (a + gamma) * Vf;
    case LossKind::HingeAbove:
      if (mf < (b - gamma) * Vf) return mf - (b - gamma) * Vf;
      if (mf < b * Vf) return 0.0;
      if (mf < b * Vf + beta) return mf - b * Vf;
      if (mf < (b + gamma) * Vf + beta) return beta;
      return mf - (b + gamma) * Vf;
    case LossKind::Vapnik:
      if (mf < (a - gamma) * Vf - 2.0 * beta) return mf - (a - gamma) * Vf;
      if (mf < a * Vf - 2.0 * beta) return -2.0 * beta;
      if (mf < a * Vf) return mf - a * Vf;
      if (mf <= b * Vf) return 0.0;
      if (mf < b * Vf + 2.0 * beta) return mf - b * Vf;
      if (mf < (b + gamma) * Vf + 2.0 * beta) return 2.0 * beta;
      return mf - (b + gamma) * Vf;
    case LossKind::HalfSpaceGeq:
      if (mf < a * Vf) return mf - a * Vf;
      if (mf <= (a + gamma) * Vf) return 0.0;
      return mf - (a + gamma) * Vf;
    case LossKind::HalfSpaceLeq:
      if (mf < (b - gamma) * Vf) return mf - (b - gamma) * Vf;
      if (mf <= b * Vf) return 0.0;
      return mf - b * Vf;
    case LossKind::Interval:
      if (mf < a * Vf) return mf - a * Vf;
      if (mf <= b * Vf) return 0.0;
      return mf - b * Vf;
  }
  return 0.0;
}

double gamma_min(const ScalarLoss& raw, double mf, double Vf) {
  if (!(Vf > 0.0)) throw std::invalid_argument("gamma_min: forward variance must be positive");
  const ScalarLoss loss = reduced(raw);
  const double a = loss.a, b = loss.b, beta = loss.beta;
  switch (loss.kind) {
    case LossKind::L1:
      return std::max(a - (mf + beta) / Vf, (mf - beta) / Vf - a);
    case LossKind::HingeBelow:
      return std::max(a - (mf + beta) / Vf, mf / Vf - a);
    case LossKind::HingeAbove:
      return std::max(b - mf / Vf, (mf - beta) / Vf - b);
    case LossKind::Vapnik:
      return std::max(a - (mf + 2.0 * beta) / Vf, (mf - 2.0 * beta) / Vf - b);
    case LossKind::HalfSpaceGeq:
      return mf / Vf - a;
    case LossKind::HalfSpaceLeq:
      return b - mf / Vf;
    case LossKind::Interval:
      return 0.5 * (b - a);
  }
  return 0.0;
}

ScalarGaussian primal_nup_update(const ScalarLoss& loss, double z) {
  const double a = loss.a, b = loss.b, beta = loss.beta;
  if (beta == kInf)
    throw std::invalid_argument(
        "primal_nup_update: unsupported kind; hard constraints take a finite-beta hinge "
        "surrogate");
  switch (loss.kind) {
    case LossKind::HingeBelow:
      return ScalarGaussian{z >= a ? z : 2.0 * a - z, 2.0 * std::abs(z - a) / beta};
    case LossKind::HingeAbove:
      return ScalarGaussian{z <= b ? z : 2.0 * b - z, 2.0 * std::abs(z - b) / beta};
    case LossKind::Vapnik:
      return gaussian_product(
          primal_nup_update(ScalarLoss::hinge_below(a, 2.0 * beta), z),
          primal_nup_update(ScalarLoss::hinge_above(b, 2.0 * beta), z));
    default:
      throw std::invalid_argument(
          "primal_nup_update: unsupported kind; L1 has no primal-side update");
  }
}

double primal_prox(const ScalarLoss& raw, double m, double V) {
  if (!(V > 0.0)) throw std::invalid_argument("primal_prox: variance must be positive");
  const ScalarLoss loss = reduced(raw);
  const double a = loss.a, b = loss.b, beta = loss.beta;
  switch (loss.kind) {
    case LossKind::L1:
      if (m > a + beta * V) return m - beta * V;
      if (m < a - beta * V) return m + beta * V;
      return a;
    case LossKind::HingeBelow:
      if (m >= a) return m;
      if (m < a - beta * V) return m + beta * V;
      return a;
    case LossKind::HingeAbove:
      if (m <= b) return m;
      if (m > b + beta * V) return m - beta * V;
      return b;
    case LossKind::Vapnik:
      if (m < a - 2.0 * beta * V) return m + 2.0 * beta * V;
      if (m < a) return a;
      if (m <= b) return m;
      if (m <= b + 2.0 * beta * V) return b;
      return m - 2.0 * beta * V;
    case LossKind::HalfSpaceGeq:
      return std::max(m, a);
    case LossKind::HalfSpaceLeq:
      return std::min(m, b);
    case LossKind::Interval:
      return std::clamp(m, a, b);
  }
  return m;
}

}  // namespace dualnup
