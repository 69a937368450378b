#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "slopecls/prox.hpp"
#include "slopecls/smoothing.hpp"

namespace slopecls {

/// Raised when the solver meets a non-finite objective or cannot take a step.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  /// Stop once ||beta_T - beta_{T-1}||_2^2 <= epsilon.
  double epsilon = 1e-10;
  int t_max = 5000;
  double tau = kDefaultTau;
  /// Fixed step constant D >= C; the computed Lipschitz constant otherwise.
  std::optional<double> step_override;

  void validate() const;
};

struct FitResult {
  Vector beta;
  /// Smoothed composite objective g^tau + eta * reg at each produced iterate.
  std::vector<double> objective_trace;
  /// Unsmoothed composite objective at the returned beta.
  double objective = 0.0;
  double smoothed_objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct PathResult {
  std::vector<double> etas;
  std::vector<FitResult> fits;
};

/// sqrt(log(2 p e / j)) for j = 1..p.
Vector slope_weights_default(Eigen::Index p);

/// Momentum sequence q_{T+1} = (1 + sqrt(1 + 4 q_T^2)) / 2.
double momentum_next(double q);

/// g^tau(beta) + eta * reg(beta).
double smoothed_objective(const SmoothedLoss& loss, const Dataset& data,
                          const RegWeights& reg, double eta,
                          const Vector& beta);

/// (1/n) sum f + eta * reg(beta) with the unsmoothed loss.
double composite_objective(const SmoothedLoss& loss, const Dataset& data,
                           const RegWeights& reg, double eta,
                           const Vector& beta);

/// Step constant used by `fit`: cfg.step_override, the cached lip_grad, or a
/// freshly computed Lipschitz constant, in that order.
double step_constant(const Dataset& data, const SmoothedLoss& loss,
                     const SolverConfig& cfg);

/// Accelerated proximal gradient on g^tau + eta * reg.
///
/// Starts from beta_1 = delta_0 = init (zero by default) with q_1 = 1 and
/// iterates
///   delta_T    = prox_{eta reg / C}(beta_T - grad g^tau(beta_T) / C)
///   beta_{T+1} = delta_T + (q_T - 1) / q_{T+1} (delta_T - delta_{T-1})
/// until the squared change of beta falls below epsilon or t_max is reached.
/// Returns the iterate with the lowest smoothed objective among delta_0 and
/// every delta_T.
FitResult fit(const Dataset& data, const SmoothedLoss& loss,
              const RegWeights& reg, double eta, const SolverConfig& cfg,
              const std::optional<Vector>& init = std::nullopt);

/// Smallest eta for which zero is stationary (L1, Slope), or max_i ||x_i||^2
/// for the L2 penalty.
double eta_max(const Dataset& data, const SmoothedLoss& loss,
               const RegWeights& reg);

/// Geometric grid from 1.01 * eta_max down to 1e-4 of that, fitted with warm
/// starts.
PathResult fit_path(const Dataset& data, const SmoothedLoss& loss,
                    const RegWeights& reg, int grid_size,
                    const SolverConfig& cfg);

/// Geometric sequence of `size` points from `start` to start * 1e-4.
std::vector<double> eta_grid(double start, int size);

}  // namespace slopecls
