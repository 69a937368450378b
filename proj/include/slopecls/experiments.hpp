#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slopecls/datagen.hpp"
#include "slopecls/solver.hpp"

namespace slopecls {

/// Competitors: (a) L1 path, (b) ridge path, (c) Slope path.
enum class Method { L1, L2, Slope };

const char* to_string(Method method);
/// "l1" | "l2" | "slope"; throws std::invalid_argument otherwise.
Method parse_method(const std::string& name);
/// "svm" -> Hinge, "logreg" -> Logistic; throws std::invalid_argument
/// otherwise.
LossFamily parse_task(const std::string& name);
/// "svm" or "logreg".
const char* task_name(LossFamily family);

/// Penalty used by a method on p features: L1(1), L2(1) or the default Slope
/// weight schedule.
RegWeights method_penalty(Method method, Eigen::Index p);

struct RunConfig {
  SolverConfig solver;
  int grid_size = 50;
  /// Worker threads across replications; 0 uses the hardware concurrency.
  int threads = 0;
};

struct MetricsRow {
  Method method = Method::Slope;
  LossFamily loss = LossFamily::Hinge;
  ExperimentSpec spec;
  int replication = 0;
  double l2_error = 0.0;
  double misclassification = 0.0;
  double selected_eta = 0.0;
  int selected_index = 0;
  bool degenerate = false;
  /// Validation misclassification of every path point, aligned with etas.
  std::vector<double> validation_path;
  std::vector<double> etas;
};

struct MetricsAggregate {
  Method method = Method::Slope;
  LossFamily loss = LossFamily::Hinge;
  ExperimentSpec spec;
  int count = 0;
  double l2_error = 0.0;
  double l2_error_se = 0.0;
  double misclassification = 0.0;
  double misclassification_se = 0.0;
  double selected_eta = 0.0;
  int degenerate = 0;
};

struct MetricsReport {
  std::vector<MetricsRow> rows;
  std::vector<MetricsAggregate> aggregates;

  /// Aggregate for (method, loss); throws std::out_of_range when absent.
  const MetricsAggregate& find(Method method, LossFamily loss) const;
};

/// Mean and standard error per (spec, loss, method) group, in first-seen
/// order.
std::vector<MetricsAggregate> aggregate(const std::vector<MetricsRow>& rows);

/// Unit-direction distance ||a/|a| - b/|b||| ; sqrt(2) when `estimate` is
/// zero.
double direction_error(const Vector& estimate, const Vector& reference);

/// Fraction of rows where sign(<x, beta>) (zero counted as +1) differs from y.
double misclassification_rate(const Dataset& data, const Vector& beta);

/// Runs every (loss, method) pair on `replications` independent draws of
/// train / validation / test data and selects each path point by validation
/// misclassification (ties resolved towards larger eta).
MetricsReport run_table(const ExperimentSpec& spec, int replications,
                        const std::vector<Method>& methods,
                        const std::vector<LossFamily>& losses,
                        const RunConfig& cfg = {});

struct GridPoint {
  int n = 0;
  int p = 0;
  int k_star = 0;
};

struct RatePoint {
  GridPoint point;
  /// (k*/n) log(p/k*).
  double rate = 0.0;
  double mean_error = 0.0;
  double error_se = 0.0;
  double mean_misclassification = 0.0;
};

struct RateCheckReport {
  Method method = Method::Slope;
  LossFamily loss = LossFamily::Logistic;
  int replications = 0;
  std::vector<RatePoint> points;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
};

double rate_variable(const GridPoint& point);

/// Least-squares fit of log(mean error) on log(rate variable). Throws
/// std::invalid_argument with fewer than four distinct rate values.
RateCheckReport run_rate_check(const ExperimentSpec& base,
                               const std::vector<GridPoint>& grid,
                               int replications, LossFamily loss,
                               Method method, const RunConfig& cfg = {});

/// OLS slope, its standard error and intercept of y on x.
struct LineFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace slopecls
