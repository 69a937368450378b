#pragma once

#include <cstdint>
#include <optional>

#include "slopecls/losses.hpp"

namespace slopecls {

inline constexpr double kDefaultTau = 0.2;
inline constexpr double kLipschitzSafety = 1.01;
inline constexpr std::uint64_t kPowerIterationSeed = 0x5eed5eedULL;

/// Nesterov-smoothed surrogate of a hinge or quantile loss.
///
/// Both losses are written as max_{|w| <= 1} (a z + w z) / 2 with a = 1 for the
/// hinge (z = 1 - y <x, beta>) and a = 2 theta - 1 for the quantile loss
/// (z = y - <x, beta>). Smoothing subtracts (tau / 2) w^2 inside the max.
/// The logistic loss is already smooth and is passed through unchanged.
struct SmoothedLoss {
  LossModel base;
  double tau = kDefaultTau;
  /// Gradient Lipschitz constant, filled in by `calibrate`.
  std::optional<double> lip_grad;

  SmoothedLoss(LossModel base_loss, double tau_value = kDefaultTau);

  bool is_smoothed() const { return base.family() != LossFamily::Logistic; }
};

/// Maximizer of the smoothed dual: min(1, |z| / (2 tau)) sign(z).
double dual_w(double z, double tau);

/// g^tau(beta); the plain empirical risk for the logistic loss.
double smoothed_risk(const SmoothedLoss& s, const Dataset& data,
                     const Vector& beta);

Vector smoothed_gradient(const SmoothedLoss& s, const Dataset& data,
                         const Vector& beta);

/// Same as smoothed_risk, given precomputed scores X beta.
double smoothed_risk_from_scores(const SmoothedLoss& s, const Vector& y,
                                 const Vector& scores);

/// Same as smoothed_gradient, given precomputed scores X beta.
Vector smoothed_gradient_from_scores(const SmoothedLoss& s,
                                     const Dataset& data,
                                     const Vector& scores);

/// Largest eigenvalue of X^T X / n by power iteration.
double gram_max_eigenvalue(const Matrix& X, double rel_tol = 1e-8,
                           int max_iter = 1000,
                           std::uint64_t seed = kPowerIterationSeed);

/// mu_max(X^T X / n) / (4 tau) for hinge and quantile, mu_max / 4 for
/// logistic, inflated by kLipschitzSafety. Returns 0 for an all-zero design.
double lipschitz_constant(const Dataset& data, double tau, LossFamily family,
                          std::uint64_t seed = kPowerIterationSeed);

/// Copy of `s` with lip_grad populated for `data`.
SmoothedLoss calibrate(SmoothedLoss s, const Dataset& data);

}  // namespace slopecls
