#include "slopecls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace slopecls {

void SolverConfig::validate() const {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  if (step_override && !(*step_override > 0.0)) {
    throw std::invalid_argument("step override must be > 0");
  }
}

Vector slope_weights_default(Eigen::Index p) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  Vector weights(p);
  const double scale = 2.0 * static_cast<double>(p) * std::exp(1.0);
  for (Eigen::Index j = 0; j < p; ++j) {
    weights[j] = std::sqrt(std::log(scale / static_cast<double>(j + 1)));
  }
  return weights;
}

double momentum_next(double q) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * q * q)); }

double smoothed_objective(const SmoothedLoss& loss, const Dataset& data,
                          const RegWeights& reg, double eta,
                          const Vector& beta) {
  return smoothed_risk(loss, data, beta) + eta * reg.value(beta);
}

double composite_objective(const SmoothedLoss& loss, const Dataset& data,
                           const RegWeights& reg, double eta,
                           const Vector& beta) {
  return empirical_risk(loss.base, data, beta) + eta * reg.value(beta);
}

double step_constant(const Dataset& data, const SmoothedLoss& loss,
                     const SolverConfig& cfg) {
  if (cfg.step_override) return *cfg.step_override;
  if (loss.lip_grad) return *loss.lip_grad;
  return lipschitz_constant(data, loss.tau, loss.base.family());
}

FitResult fit(const Dataset& data, const SmoothedLoss& loss,
              const RegWeights& reg, double eta, const SolverConfig& cfg,
              const std::optional<Vector>& init) {
  cfg.validate();
  check_labels(loss.base, data);
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("eta must be finite and >= 0");
  }
  const Eigen::Index p = data.p();
  if (init && init->size() != p) {
    throw std::invalid_argument("initial point length does not match p");
  }
  if (reg.kind() == RegKind::Slope && reg.slope_weights().size() != p) {
    throw std::invalid_argument("slope weights length does not match p");
  }
  const double lipschitz = step_constant(data, loss, cfg);
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
    throw DivergenceError("gradient Lipschitz constant is zero or non-finite");
  }
  const double step = 1.0 / lipschitz;

  auto objective_at = [&](const Vector& beta, const Vector& scores) {
    const double value = smoothed_risk_from_scores(loss, data.y(), scores) +
                         eta * reg.value(beta);
    if (!std::isfinite(value)) {
      throw DivergenceError("non-finite objective encountered");
    }
    return value;
  };

  // Scores X beta are propagated through the momentum step by linearity so
  // each iteration costs one product with X and one with X^T.
  Vector delta_prev = init ? *init : Vector::Zero(p);
  Vector scores_delta_prev = data.X() * delta_prev;
  Vector beta = delta_prev;
  Vector scores_beta = scores_delta_prev;
  double q = 1.0;

  FitResult result;
  result.beta = delta_prev;
  double best = objective_at(delta_prev, scores_delta_prev);

  for (int iter = 0; iter < cfg.t_max; ++iter) {
    const Vector grad = smoothed_gradient_from_scores(loss, data, scores_beta);
    Vector delta = apply_prox(reg, beta - step * grad, step, eta);
    Vector scores_delta = data.X() * delta;

    const double value = objective_at(delta, scores_delta);
    result.objective_trace.push_back(value);
    if (value < best) {
      best = value;
      result.beta = delta;
    }

    const double q_next = momentum_next(q);
    const double momentum = (q - 1.0) / q_next;
    Vector beta_next = delta + momentum * (delta - delta_prev);
    scores_beta = scores_delta + momentum * (scores_delta - scores_delta_prev);
    const double change = (beta_next - beta).squaredNorm();

    beta = std::move(beta_next);
    delta_prev = std::move(delta);
    scores_delta_prev = std::move(scores_delta);
    q = q_next;
    result.iterations = iter + 1;
    if (change <= cfg.epsilon) {
      result.converged = true;
      break;
    }
  }

  result.smoothed_objective = best;
  result.objective = composite_objective(loss, data, reg, eta, result.beta);
  return result;
}

double eta_max(const Dataset& data, const SmoothedLoss& loss,
               const RegWeights& reg) {
  if (reg.kind() == RegKind::L2) {
    return data.X().rowwise().squaredNorm().maxCoeff();
  }
  const Vector grad = smoothed_gradient(loss, data, Vector::Zero(data.p()));
  if (reg.kind() == RegKind::L1) {
    if (reg.lambda() == 0.0) {
      throw std::invalid_argument("eta_max undefined for a zero L1 level");
    }
    return grad.lpNorm<Eigen::Infinity>() / reg.lambda();
  }
  const Vector& weights = reg.slope_weights();
  if (weights.size() != grad.size()) {
    throw std::invalid_argument("slope weights length does not match p");
  }
  Vector magnitudes = grad.cwiseAbs();
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  double grad_sum = 0.0;
  double weight_sum = 0.0;
  double ratio = 0.0;
  for (Eigen::Index k = 0; k < magnitudes.size(); ++k) {
    grad_sum += magnitudes[k];
    weight_sum += weights[k];
    ratio = std::max(ratio, grad_sum / weight_sum);
  }
  return ratio;
}

std::vector<double> eta_grid(double start, int size) {
  if (size < 2) throw std::invalid_argument("grid size must be >= 2");
  if (!(start > 0.0) || !std::isfinite(start)) {
    throw std::invalid_argument("grid start must be positive");
  }
  std::vector<double> etas(static_cast<std::size_t>(size));
  for (int m = 0; m < size; ++m) {
    etas[static_cast<std::size_t>(m)] =
        start * std::pow(1e-4, static_cast<double>(m) / (size - 1));
  }
  return etas;
}

PathResult fit_path(const Dataset& data, const SmoothedLoss& loss,
                    const RegWeights& reg, int grid_size,
                    const SolverConfig& cfg) {
  cfg.validate();
  SmoothedLoss calibrated = loss;
  if (!calibrated.lip_grad && !cfg.step_override) {
    calibrated = calibrate(calibrated, data);
  }
  const double top = eta_max(data, calibrated, reg);
  if (!(top > 0.0)) {
    throw DivergenceError("zero gradient at the origin; path is degenerate");
  }

  PathResult path;
  path.etas = eta_grid(1.01 * top, grid_size);
  path.fits.reserve(path.etas.size());
  std::optional<Vector> warm;
  for (double eta : path.etas) {
    path.fits.push_back(fit(data, calibrated, reg, eta, cfg, warm));
    warm = path.fits.back().beta;
  }
  return path;
}

}  // namespace slopecls
