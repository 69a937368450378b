#include "slopecls/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slopecls {

const char* to_string(LossFamily family) {
  switch (family) {
    case LossFamily::Hinge:
      return "hinge";
    case LossFamily::Logistic:
      return "logistic";
    case LossFamily::Quantile:
      return "quantile";
  }
  return "unknown";
}

LossModel LossModel::hinge() { return LossModel(LossFamily::Hinge, 0.0, 1.0); }

LossModel LossModel::logistic() {
  return LossModel(LossFamily::Logistic, 0.0, 1.0);
}

LossModel LossModel::quantile(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("quantile level must lie in (0, 1), got " +
                                std::to_string(theta));
  }
  return LossModel(LossFamily::Quantile, theta, std::max(theta, 1.0 - theta));
}

Dataset::Dataset(Matrix X, Vector y) : X_(std::move(X)), y_(std::move(y)) {
  if (X_.rows() < 1 || X_.cols() < 1) {
    throw std::invalid_argument("dataset needs at least one row and column");
  }
  if (X_.rows() != y_.size()) {
    throw std::invalid_argument("design matrix has " +
                                std::to_string(X_.rows()) + " rows but y has " +
                                std::to_string(y_.size()) + " entries");
  }
  if (!X_.allFinite() || !y_.allFinite()) {
    throw std::invalid_argument("dataset contains non-finite entries");
  }
}

bool Dataset::has_binary_labels() const {
  return (y_.array() == 1.0 || y_.array() == -1.0).all();
}

Dataset Dataset::leading_columns(Eigen::Index k) const {
  if (k < 1 || k > p()) {
    throw std::invalid_argument("column count out of range");
  }
  return Dataset(X_.leftCols(k), y_);
}

namespace {

void check_args(const LossModel& model, double t, double y) {
  if (!std::isfinite(t) || !std::isfinite(y)) {
    throw std::domain_error("loss evaluated at a non-finite argument");
  }
  if (model.is_classification() && y != 1.0 && y != -1.0) {
    throw std::domain_error("classification label must be -1 or +1");
  }
}

// log(1 + exp(-m)) without overflow.
double log1p_exp_neg(double m) {
  return std::log1p(std::exp(-std::abs(m))) + std::max(0.0, -m);
}

}  // namespace

double loss_value(const LossModel& model, double t, double y) {
  check_args(model, t, y);
  switch (model.family()) {
    case LossFamily::Hinge:
      return std::max(0.0, 1.0 - y * t);
    case LossFamily::Logistic:
      return log1p_exp_neg(y * t);
    case LossFamily::Quantile: {
      const double indicator = t <= 0.0 ? 1.0 : 0.0;
      return (model.theta() - indicator) * t;
    }
  }
  return 0.0;
}

double loss_subgradient(const LossModel& model, double t, double y) {
  check_args(model, t, y);
  switch (model.family()) {
    case LossFamily::Hinge:
      return 1.0 - y * t >= 0.0 ? -y : 0.0;
    case LossFamily::Logistic: {
      // -y / (1 + exp(y t)), written to stay finite for large |t|.
      const double m = y * t;
      const double sigma = m >= 0.0 ? std::exp(-m) / (1.0 + std::exp(-m))
                                    : 1.0 / (1.0 + std::exp(m));
      return -y * sigma;
    }
    case LossFamily::Quantile:
      return model.theta() - (t <= 0.0 ? 1.0 : 0.0);
  }
  return 0.0;
}

void check_labels(const LossModel& model, const Dataset& data) {
  if (model.is_classification() && !data.has_binary_labels()) {
    throw std::invalid_argument(std::string(to_string(model.family())) +
                                " loss requires labels in {-1, +1}");
  }
}

double empirical_risk(const LossModel& model, const Dataset& data,
                      const Vector& beta) {
  if (beta.size() != data.p()) {
    throw std::invalid_argument("coefficient length does not match p");
  }
  const Vector scores = data.X() * beta;
  const Vector& y = data.y();
  double total = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    if (model.family() == LossFamily::Quantile) {
      total += loss_value(model, y[i] - scores[i], y[i]);
    } else {
      total += loss_value(model, scores[i], y[i]);
    }
  }
  return total / static_cast<double>(data.n());
}

}  // namespace slopecls
