#pragma once

#include <Eigen/Dense>

namespace slopecls {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class LossFamily { Hinge, Logistic, Quantile };

const char* to_string(LossFamily family);

/// A scalar loss f(t; y) together with its Lipschitz constant in t.
///
/// Hinge and logistic losses take the linear score t = <x, beta> and a label
/// y in {-1, +1}. The quantile (check) loss takes the residual
/// t = y - <x, beta>; its `y` argument is ignored.
class LossModel {
 public:
  static LossModel hinge();
  static LossModel logistic();
  /// Throws std::invalid_argument unless 0 < theta < 1.
  static LossModel quantile(double theta);

  LossFamily family() const { return family_; }
  double theta() const { return theta_; }
  double lipschitz() const { return lipschitz_; }
  bool is_classification() const { return family_ != LossFamily::Quantile; }

 private:
  LossModel(LossFamily family, double theta, double lipschitz)
      : family_(family), theta_(theta), lipschitz_(lipschitz) {}

  LossFamily family_;
  double theta_;
  double lipschitz_;
};

/// Design matrix and responses. Immutable once constructed.
class Dataset {
 public:
  /// Throws std::invalid_argument on empty or mismatched inputs or non-finite
  /// entries.
  Dataset(Matrix X, Vector y);

  const Matrix& X() const { return X_; }
  const Vector& y() const { return y_; }
  Eigen::Index n() const { return X_.rows(); }
  Eigen::Index p() const { return X_.cols(); }

  /// True when every label is exactly -1 or +1.
  bool has_binary_labels() const;

  /// Copy restricted to the first `k` columns.
  Dataset leading_columns(Eigen::Index k) const;

 private:
  Matrix X_;
  Vector y_;
};

double loss_value(const LossModel& model, double t, double y);

/// Subgradient in t. At kinks the active-indicator convention is used:
/// hinge returns -y when 1 - y t >= 0, quantile uses 1(t <= 0) = 1.
double loss_subgradient(const LossModel& model, double t, double y);

/// (1/n) sum_i f(<x_i, beta>; y_i), with the quantile residual convention.
double empirical_risk(const LossModel& model, const Dataset& data,
                      const Vector& beta);

/// Throws std::invalid_argument when the labels are incompatible with the loss.
void check_labels(const LossModel& model, const Dataset& data);

}  // namespace slopecls
