#pragma once

#include <variant>

#include "slopecls/losses.hpp"

namespace slopecls {

/// Penalty families. L2 denotes (lambda / 2) ||beta||_2^2 so that its prox is
/// a plain rescaling.
struct L1Penalty {
  double lambda = 1.0;
};
struct L2Penalty {
  double lambda = 1.0;
};
/// Sorted-L1 penalty sum_j weights_j |beta|_(j); weights nonincreasing and
/// strictly positive.
struct SlopePenalty {
  Vector weights;
};

enum class RegKind { L1, L2, Slope };

class RegWeights {
 public:
  static RegWeights l1(double lambda = 1.0);
  static RegWeights l2(double lambda = 1.0);
  /// Throws std::invalid_argument unless weights are nonincreasing and > 0.
  static RegWeights slope(Vector weights);

  RegKind kind() const;
  const std::variant<L1Penalty, L2Penalty, SlopePenalty>& penalty() const {
    return penalty_;
  }
  /// Weight vector of a Slope penalty; throws for other kinds.
  const Vector& slope_weights() const;
  /// Scalar lambda of an L1 or L2 penalty; throws for Slope.
  double lambda() const;

  /// Penalty value at beta (without the eta multiplier).
  double value(const Vector& beta) const;

 private:
  explicit RegWeights(std::variant<L1Penalty, L2Penalty, SlopePenalty> p)
      : penalty_(std::move(p)) {}

  std::variant<L1Penalty, L2Penalty, SlopePenalty> penalty_;
};

const char* to_string(RegKind kind);

/// Throws std::invalid_argument unless w_1 >= ... >= w_p > 0.
void check_slope_weights(const Vector& weights);

double slope_norm(const Vector& weights, const Vector& beta);

Vector soft_threshold(const Vector& gamma, double lambda);

/// Prox of (lambda / 2) ||.||_2^2.
Vector l2_shrink(const Vector& gamma, double lambda);

/// Work counters of one sorted-L1 prox evaluation.
struct ProxSortedL1Stats {
  int pushes = 0;
  int merges = 0;
};

/// argmin_b 0.5 ||b - gamma||^2 + sum_j weights_j |b|_(j).
///
/// Signs and the permutation sorting |gamma| in decreasing order (stable) are
/// factored out, the resulting isotone problem is solved by stack-based block
/// averaging, and the permutation and signs are restored.
Vector prox_sorted_l1(const Vector& gamma, const Vector& weights,
                      ProxSortedL1Stats* stats = nullptr);

/// Prox of step * eta * reg evaluated at gamma.
Vector apply_prox(const RegWeights& reg, const Vector& gamma, double step,
                  double eta);

}  // namespace slopecls
