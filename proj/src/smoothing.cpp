#include "slopecls/smoothing.hpp"

#include <cmath>
#include <stdexcept>

#include "slopecls/rng.hpp"

namespace slopecls {

namespace {

void require_positive_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::domain_error("smoothing parameter tau must be positive");
  }
}

void require_length(const Dataset& data, const Vector& beta) {
  if (beta.size() != data.p()) {
    throw std::invalid_argument("coefficient length does not match p");
  }
}

// Linear coefficient a of the max-form (a z + |z|) / 2.
double linear_part(const LossModel& base) {
  return base.family() == LossFamily::Quantile ? 2.0 * base.theta() - 1.0
                                               : 1.0;
}

// z_i and dz_i / d<x_i, beta> for the smoothed families.
double dual_argument(LossFamily family, double score, double y) {
  return family == LossFamily::Hinge ? 1.0 - y * score : y - score;
}

double dual_argument_slope(LossFamily family, double y) {
  return family == LossFamily::Hinge ? -y : -1.0;
}

}  // namespace

SmoothedLoss::SmoothedLoss(LossModel base_loss, double tau_value)
    : base(base_loss), tau(tau_value) {
  require_positive_tau(tau);
}

double dual_w(double z, double tau) {
  require_positive_tau(tau);
  const double magnitude = std::min(1.0, std::abs(z) / (2.0 * tau));
  if (z > 0.0) return magnitude;
  if (z < 0.0) return -magnitude;
  return 0.0;
}

double smoothed_risk_from_scores(const SmoothedLoss& s, const Vector& y,
                                 const Vector& scores) {
  const auto n = scores.size();
  double total = 0.0;
  if (!s.is_smoothed()) {
    for (Eigen::Index i = 0; i < n; ++i) {
      total += loss_value(s.base, scores[i], y[i]);
    }
    return total / static_cast<double>(n);
  }
  const double a = linear_part(s.base);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = dual_argument(s.base.family(), scores[i], y[i]);
    const double w = dual_w(z, s.tau);
    total += 0.5 * (a * z + w * z) - 0.5 * s.tau * w * w;
  }
  return total / static_cast<double>(n);
}

double smoothed_risk(const SmoothedLoss& s, const Dataset& data,
                     const Vector& beta) {
  require_length(data, beta);
  if (!s.is_smoothed()) return empirical_risk(s.base, data, beta);
  return smoothed_risk_from_scores(s, data.y(), data.X() * beta);
}

Vector smoothed_gradient_from_scores(const SmoothedLoss& s,
                                     const Dataset& data,
                                     const Vector& scores) {
  const Vector& y = data.y();
  Vector coeff(data.n());
  if (!s.is_smoothed()) {
    for (Eigen::Index i = 0; i < data.n(); ++i) {
      const double m = y[i] * scores[i];
      const double sigma = m >= 0.0 ? std::exp(-m) / (1.0 + std::exp(-m))
                                    : 1.0 / (1.0 + std::exp(m));
      coeff[i] = -y[i] * sigma;
    }
  } else {
    const double a = linear_part(s.base);
    const LossFamily family = s.base.family();
    for (Eigen::Index i = 0; i < data.n(); ++i) {
      const double z = dual_argument(family, scores[i], y[i]);
      coeff[i] = 0.5 * (a + dual_w(z, s.tau)) *
                 dual_argument_slope(family, y[i]);
    }
  }
  return data.X().transpose() * coeff / static_cast<double>(data.n());
}

Vector smoothed_gradient(const SmoothedLoss& s, const Dataset& data,
                         const Vector& beta) {
  require_length(data, beta);
  return smoothed_gradient_from_scores(s, data, data.X() * beta);
}

double gram_max_eigenvalue(const Matrix& X, double rel_tol, int max_iter,
                           std::uint64_t seed) {
  const auto n = static_cast<double>(X.rows());
  Rng rng(seed);
  Vector v(X.cols());
  for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = rng.normal();
  v.normalize();

  double estimate = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const Vector w = X.transpose() * (X * v) / n;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    const bool done = std::abs(norm - estimate) <= rel_tol * norm;
    estimate = norm;
    if (done) break;
  }
  return estimate;
}

double lipschitz_constant(const Dataset& data, double tau, LossFamily family,
                          std::uint64_t seed) {
  const double mu = gram_max_eigenvalue(data.X(), 1e-8, 1000, seed);
  if (family == LossFamily::Logistic) return kLipschitzSafety * mu / 4.0;
  require_positive_tau(tau);
  return kLipschitzSafety * mu / (4.0 * tau);
}

SmoothedLoss calibrate(SmoothedLoss s, const Dataset& data) {
  s.lip_grad = lipschitz_constant(data, s.tau, s.base.family());
  return s;
}

}  // namespace slopecls
