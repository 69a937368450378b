#include "slopecls/prox.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace slopecls {

namespace {

void require_nonneg(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("penalty level must be finite and >= 0");
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Indices ordering |v| decreasingly, ties by index.
std::vector<Eigen::Index> decreasing_magnitude_order(const Vector& v) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&v](Eigen::Index a, Eigen::Index b) {
                     return std::abs(v[a]) > std::abs(v[b]);
                   });
  return order;
}

}  // namespace

const char* to_string(RegKind kind) {
  switch (kind) {
    case RegKind::L1:
      return "l1";
    case RegKind::L2:
      return "l2";
    case RegKind::Slope:
      return "slope";
  }
  return "unknown";
}

void check_slope_weights(const Vector& weights) {
  if (weights.size() < 1) {
    throw std::invalid_argument("slope weights must be non-empty");
  }
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    if (!(weights[j] > 0.0) || !std::isfinite(weights[j])) {
      throw std::invalid_argument("slope weight " + std::to_string(j) +
                                  " is not strictly positive");
    }
    if (j > 0 && weights[j] > weights[j - 1]) {
      throw std::invalid_argument("slope weights must be nonincreasing");
    }
  }
}

RegWeights RegWeights::l1(double lambda) {
  require_nonneg(lambda);
  return RegWeights(L1Penalty{lambda});
}

RegWeights RegWeights::l2(double lambda) {
  require_nonneg(lambda);
  return RegWeights(L2Penalty{lambda});
}

RegWeights RegWeights::slope(Vector weights) {
  check_slope_weights(weights);
  return RegWeights(SlopePenalty{std::move(weights)});
}

RegKind RegWeights::kind() const {
  return std::visit(overloaded{[](const L1Penalty&) { return RegKind::L1; },
                               [](const L2Penalty&) { return RegKind::L2; },
                               [](const SlopePenalty&) {
                                 return RegKind::Slope;
                               }},
                    penalty_);
}

const Vector& RegWeights::slope_weights() const {
  if (const auto* s = std::get_if<SlopePenalty>(&penalty_)) return s->weights;
  throw std::logic_error("penalty is not a slope penalty");
}

double RegWeights::lambda() const {
  if (const auto* l1 = std::get_if<L1Penalty>(&penalty_)) return l1->lambda;
  if (const auto* l2 = std::get_if<L2Penalty>(&penalty_)) return l2->lambda;
  throw std::logic_error("slope penalty has no scalar lambda");
}

double RegWeights::value(const Vector& beta) const {
  return std::visit(
      overloaded{
          [&](const L1Penalty& p) { return p.lambda * beta.lpNorm<1>(); },
          [&](const L2Penalty& p) {
            return 0.5 * p.lambda * beta.squaredNorm();
          },
          [&](const SlopePenalty& p) { return slope_norm(p.weights, beta); }},
      penalty_);
}

double slope_norm(const Vector& weights, const Vector& beta) {
  if (weights.size() != beta.size()) {
    throw std::invalid_argument("slope weights and coefficients differ in length");
  }
  Vector magnitudes = beta.cwiseAbs();
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  return weights.dot(magnitudes);
}

Vector soft_threshold(const Vector& gamma, double lambda) {
  require_nonneg(lambda);
  Vector out(gamma.size());
  for (Eigen::Index j = 0; j < gamma.size(); ++j) {
    const double shrunk = std::max(std::abs(gamma[j]) - lambda, 0.0);
    out[j] = std::copysign(shrunk, gamma[j]);
    if (shrunk == 0.0) out[j] = 0.0;
  }
  return out;
}

Vector l2_shrink(const Vector& gamma, double lambda) {
  require_nonneg(lambda);
  return gamma / (1.0 + lambda);
}

Vector prox_sorted_l1(const Vector& gamma, const Vector& weights,
                      ProxSortedL1Stats* stats) {
  if (gamma.size() != weights.size()) {
    throw std::invalid_argument("slope weights and input differ in length");
  }
  check_slope_weights(weights);
  const Eigen::Index p = gamma.size();
  const auto order = decreasing_magnitude_order(gamma);

  // Blocks of the isotone solution: [start, end] with running sum of
  // |gamma|_(j) - weights_j; block value is the mean of that difference.
  struct Block {
    Eigen::Index start;
    Eigen::Index end;
    double sum;
    double value;
  };
  std::vector<Block> stack;
  stack.reserve(static_cast<std::size_t>(p));
  ProxSortedL1Stats counts;

  for (Eigen::Index k = 0; k < p; ++k) {
    const double diff =
        std::abs(gamma[order[static_cast<std::size_t>(k)]]) - weights[k];
    stack.push_back({k, k, diff, diff});
    ++counts.pushes;
    while (stack.size() > 1 && stack.back().value >= stack[stack.size() - 2].value) {
      const Block top = stack.back();
      stack.pop_back();
      Block& prev = stack.back();
      prev.end = top.end;
      prev.sum += top.sum;
      prev.value = prev.sum / static_cast<double>(prev.end - prev.start + 1);
      ++counts.merges;
    }
  }

  Vector out = Vector::Zero(p);
  for (const Block& block : stack) {
    const double level = std::max(block.value, 0.0);
    if (level == 0.0) continue;
    for (Eigen::Index k = block.start; k <= block.end; ++k) {
      const Eigen::Index j = order[static_cast<std::size_t>(k)];
      out[j] = std::copysign(level, gamma[j]);
    }
  }
  if (stats != nullptr) *stats = counts;
  return out;
}

Vector apply_prox(const RegWeights& reg, const Vector& gamma, double step,
                  double eta) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("prox step must be positive");
  }
  require_nonneg(eta);
  if (eta == 0.0) return gamma;
  const double scale = eta * step;
  return std::visit(
      overloaded{[&](const L1Penalty& p) {
                   return soft_threshold(gamma, scale * p.lambda);
                 },
                 [&](const L2Penalty& p) {
                   return l2_shrink(gamma, scale * p.lambda);
                 },
                 [&](const SlopePenalty& p) {
                   return prox_sorted_l1(gamma, Vector(scale * p.weights));
                 }},
      reg.penalty());
}

}  // namespace slopecls
