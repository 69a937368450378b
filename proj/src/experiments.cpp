#include "slopecls/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <stdexcept>
#include <thread>

namespace slopecls {

const char* to_string(Method method) {
  switch (method) {
    case Method::L1:
      return "l1";
    case Method::L2:
      return "l2";
    case Method::Slope:
      return "slope";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "l1") return Method::L1;
  if (name == "l2") return Method::L2;
  if (name == "slope") return Method::Slope;
  throw std::invalid_argument("unknown method '" + name + "'");
}

LossFamily parse_task(const std::string& name) {
  if (name == "svm") return LossFamily::Hinge;
  if (name == "logreg") return LossFamily::Logistic;
  throw std::invalid_argument("unknown loss '" + name + "'");
}

const char* task_name(LossFamily family) {
  switch (family) {
    case LossFamily::Hinge:
      return "svm";
    case LossFamily::Logistic:
      return "logreg";
    case LossFamily::Quantile:
      return "quantile";
  }
  return "unknown";
}

RegWeights method_penalty(Method method, Eigen::Index p) {
  switch (method) {
    case Method::L1:
      return RegWeights::l1(1.0);
    case Method::L2:
      return RegWeights::l2(1.0);
    case Method::Slope:
      return RegWeights::slope(slope_weights_default(p));
  }
  throw std::invalid_argument("unknown method");
}

double direction_error(const Vector& estimate, const Vector& reference) {
  if (estimate.size() != reference.size()) {
    throw std::invalid_argument("direction_error: length mismatch");
  }
  const double ref_norm = reference.norm();
  if (ref_norm == 0.0) {
    throw std::invalid_argument("direction_error: zero reference vector");
  }
  const double est_norm = estimate.norm();
  if (est_norm == 0.0) return std::sqrt(2.0);
  return (estimate / est_norm - reference / ref_norm).norm();
}

double misclassification_rate(const Dataset& data, const Vector& beta) {
  const Vector scores = data.X() * beta;
  Eigen::Index wrong = 0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double predicted = scores[i] >= 0.0 ? 1.0 : -1.0;
    if (predicted != data.y()[i]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(data.n());
}

const MetricsAggregate& MetricsReport::find(Method method,
                                            LossFamily loss) const {
  for (const auto& agg : aggregates) {
    if (agg.method == method && agg.loss == loss) return agg;
  }
  throw std::out_of_range(std::string("no aggregate for ") + to_string(method) +
                          "/" + task_name(loss));
}

namespace {

bool same_spec(const ExperimentSpec& a, const ExperimentSpec& b) {
  return a.n == b.n && a.p == b.p && a.k_star == b.k_star && a.rho == b.rho &&
         a.seed == b.seed && a.val_size == b.val_size &&
         a.test_size == b.test_size;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& values) {
  MeanSe out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  const auto count = static_cast<double>(values.size());
  out.mean = sum / count;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / (count - 1.0) / count);
  }
  return out;
}

// One replication: all (loss, method) pairs, in loss-major order.
std::vector<MetricsRow> run_replication(const ExperimentSpec& spec,
                                        int replication,
                                        const std::vector<Method>& methods,
                                        const std::vector<LossFamily>& losses,
                                        const RunConfig& cfg) {
  const auto rep = static_cast<std::uint64_t>(replication);
  Rng train_rng = Rng::stream(spec.seed, rep, StreamRole::Train);
  Rng val_rng = Rng::stream(spec.seed, rep, StreamRole::Validation);
  Rng test_rng = Rng::stream(spec.seed, rep, StreamRole::Test);
  const Dataset train = generate(spec, spec.n, train_rng);
  const Dataset validation = generate(spec, spec.val_size, val_rng);
  const Dataset test = generate(spec, spec.test_size, test_rng);

  std::vector<MetricsRow> rows;
  for (LossFamily family : losses) {
    const LossModel model = family == LossFamily::Hinge ? LossModel::hinge()
                                                        : LossModel::logistic();
    const Vector reference = theoretical_minimizer(test, spec.k_star, model);
    const SmoothedLoss loss = calibrate(SmoothedLoss(model, cfg.solver.tau), train);

    for (Method method : methods) {
      const RegWeights reg = method_penalty(method, spec.p);
      const PathResult path = fit_path(train, loss, reg, cfg.grid_size, cfg.solver);

      MetricsRow row;
      row.method = method;
      row.loss = family;
      row.spec = spec;
      row.replication = replication;
      row.etas = path.etas;
      row.validation_path.reserve(path.fits.size());
      std::size_t best = 0;
      for (std::size_t m = 0; m < path.fits.size(); ++m) {
        row.validation_path.push_back(
            misclassification_rate(validation, path.fits[m].beta));
        // Strict comparison keeps the earlier, larger eta on ties.
        if (row.validation_path[m] < row.validation_path[best]) best = m;
      }
      const Vector& chosen = path.fits[best].beta;
      row.selected_index = static_cast<int>(best);
      row.selected_eta = path.etas[best];
      row.degenerate = chosen.squaredNorm() == 0.0;
      row.l2_error = direction_error(chosen, reference);
      row.misclassification = misclassification_rate(test, chosen);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

std::vector<MetricsAggregate> aggregate(const std::vector<MetricsRow>& rows) {
  std::vector<MetricsAggregate> out;
  std::vector<std::vector<const MetricsRow*>> members;
  for (const auto& row : rows) {
    std::size_t g = 0;
    for (; g < out.size(); ++g) {
      if (out[g].method == row.method && out[g].loss == row.loss &&
          same_spec(out[g].spec, row.spec)) {
        break;
      }
    }
    if (g == out.size()) {
      MetricsAggregate agg;
      agg.method = row.method;
      agg.loss = row.loss;
      agg.spec = row.spec;
      out.push_back(agg);
      members.emplace_back();
    }
    members[g].push_back(&row);
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    std::vector<double> errors;
    std::vector<double> miscs;
    double eta_sum = 0.0;
    for (const MetricsRow* row : members[g]) {
      errors.push_back(row->l2_error);
      miscs.push_back(row->misclassification);
      eta_sum += row->selected_eta;
      if (row->degenerate) ++out[g].degenerate;
    }
    const MeanSe e = mean_se(errors);
    const MeanSe m = mean_se(miscs);
    out[g].count = static_cast<int>(members[g].size());
    out[g].l2_error = e.mean;
    out[g].l2_error_se = e.se;
    out[g].misclassification = m.mean;
    out[g].misclassification_se = m.se;
    out[g].selected_eta = eta_sum / static_cast<double>(members[g].size());
  }
  return out;
}

MetricsReport run_table(const ExperimentSpec& spec, int replications,
                        const std::vector<Method>& methods,
                        const std::vector<LossFamily>& losses,
                        const RunConfig& cfg) {
  spec.validate();
  cfg.solver.validate();
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (methods.empty()) throw std::invalid_argument("no methods selected");
  if (losses.empty()) throw std::invalid_argument("no losses selected");
  for (LossFamily family : losses) {
    if (family == LossFamily::Quantile) {
      throw std::invalid_argument("the benchmark covers svm and logreg only");
    }
  }

  std::vector<std::vector<MetricsRow>> per_rep(static_cast<std::size_t>(replications));
  std::vector<std::exception_ptr> errors(per_rep.size());
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int r = next++; r < replications; r = next++) {
      try {
        per_rep[static_cast<std::size_t>(r)] =
            run_replication(spec, r, methods, losses, cfg);
      } catch (...) {
        errors[static_cast<std::size_t>(r)] = std::current_exception();
      }
    }
  };
  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, replications);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  // Group-major order: loss, then method, then replication.
  MetricsReport report;
  for (LossFamily family : losses) {
    for (Method method : methods) {
      for (auto& rows : per_rep) {
        for (auto& row : rows) {
          if (row.loss == family && row.method == method) {
            report.rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  report.aggregates = aggregate(report.rows);
  return report;
}

double rate_variable(const GridPoint& point) {
  return static_cast<double>(point.k_star) / point.n *
         std::log(static_cast<double>(point.p) / point.k_star);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw std::invalid_argument("line fit needs at least three paired points");
  }
  const auto m = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("line fit: constant regressor");
  LineFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double resid = y[i] - out.intercept - out.slope * x[i];
    ssr += resid * resid;
  }
  out.slope_stderr = std::sqrt(ssr / (m - 2.0) / sxx);
  return out;
}

RateCheckReport run_rate_check(const ExperimentSpec& base,
                               const std::vector<GridPoint>& grid,
                               int replications, LossFamily loss,
                               Method method, const RunConfig& cfg) {
  std::set<double> distinct;
  for (const auto& point : grid) {
    if (point.n < 1 || point.p < 1 || point.k_star < 1 ||
        point.k_star >= point.p) {
      throw std::invalid_argument("rate grid point needs 1 <= k* < p");
    }
    distinct.insert(rate_variable(point));
  }
  if (distinct.size() < 4) {
    throw std::invalid_argument(
        "rate check needs at least four distinct values of (k*/n) log(p/k*)");
  }

  RateCheckReport report;
  report.method = method;
  report.loss = loss;
  report.replications = replications;
  std::vector<double> log_rate;
  std::vector<double> log_error;
  for (const auto& point : grid) {
    ExperimentSpec spec = base;
    spec.n = point.n;
    spec.p = point.p;
    spec.k_star = point.k_star;
    const MetricsReport table = run_table(spec, replications, {method}, {loss}, cfg);
    const MetricsAggregate& agg = table.find(method, loss);

    RatePoint rp;
    rp.point = point;
    rp.rate = rate_variable(point);
    rp.mean_error = agg.l2_error;
    rp.error_se = agg.l2_error_se;
    rp.mean_misclassification = agg.misclassification;
    if (!(rp.mean_error > 0.0)) {
      throw std::invalid_argument("rate check: zero mean error cannot be logged");
    }
    report.points.push_back(rp);
    log_rate.push_back(std::log(rp.rate));
    log_error.push_back(std::log(rp.mean_error));
  }
  const LineFit line = fit_line(log_rate, log_error);
  report.slope = line.slope;
  report.slope_stderr = line.slope_stderr;
  report.intercept = line.intercept;
  return report;
}

}  // namespace slopecls
