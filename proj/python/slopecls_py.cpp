#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "slopecls/datagen.hpp"
#include "slopecls/experiments.hpp"
#include "slopecls/report.hpp"
#include "slopecls/solver.hpp"

namespace py = pybind11;
using namespace slopecls;

namespace {

LossModel make_loss(const std::string& name, double theta) {
  if (name == "hinge" || name == "svm") return LossModel::hinge();
  if (name == "logistic" || name == "logreg") return LossModel::logistic();
  if (name == "quantile") return LossModel::quantile(theta);
  throw std::invalid_argument("unknown loss: " + name);
}

RegWeights make_penalty(const std::string& name, Eigen::Index p, double lambda,
                        const std::optional<Vector>& weights) {
  if (name == "l1") return RegWeights::l1(lambda);
  if (name == "l2") return RegWeights::l2(lambda);
  if (name == "slope") return RegWeights::slope(weights ? *weights : slope_weights_default(p));
  throw std::invalid_argument("unknown penalty: " + name);
}

SolverConfig make_config(double epsilon, int t_max, double tau) {
  SolverConfig cfg;
  cfg.epsilon = epsilon;
  cfg.t_max = t_max;
  cfg.tau = tau;
  cfg.validate();
  return cfg;
}

py::dict to_dict(const FitResult& r) {
  py::dict out;
  out["beta"] = r.beta;
  out["objective"] = r.objective;
  out["smoothed_objective"] = r.smoothed_objective;
  out["iterations"] = r.iterations;
  out["converged"] = r.converged;
  out["objective_trace"] = r.objective_trace;
  return out;
}

ExperimentSpec make_spec(int n, int p, int k_star, double rho, std::uint64_t seed,
                         int val_size, int test_size) {
  ExperimentSpec spec;
  spec.n = n;
  spec.p = p;
  spec.k_star = k_star;
  spec.rho = rho;
  spec.seed = seed;
  spec.val_size = val_size;
  spec.test_size = test_size;
  spec.validate();
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sorted-L1 penalized classification with smoothed hinge and quantile losses.";

  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);

  m.def(
      "loss_value",
      [](const std::string& loss, double t, double y, double theta) {
        return loss_value(make_loss(loss, theta), t, y);
      },
      py::arg("loss"), py::arg("t"), py::arg("y") = 1.0, py::arg("theta") = 0.5);

  m.def(
      "empirical_risk",
      [](const Matrix& X, const Vector& y, const Vector& beta, const std::string& loss,
         double theta) { return empirical_risk(make_loss(loss, theta), Dataset(X, y), beta); },
      py::arg("X"), py::arg("y"), py::arg("beta"), py::arg("loss"), py::arg("theta") = 0.5);

  m.def(
      "smoothed_risk",
      [](const Matrix& X, const Vector& y, const Vector& beta, const std::string& loss,
         double tau, double theta) {
        return smoothed_risk(SmoothedLoss(make_loss(loss, theta), tau), Dataset(X, y), beta);
      },
      py::arg("X"), py::arg("y"), py::arg("beta"), py::arg("loss"),
      py::arg("tau") = kDefaultTau, py::arg("theta") = 0.5);

  m.def(
      "smoothed_gradient",
      [](const Matrix& X, const Vector& y, const Vector& beta, const std::string& loss,
         double tau, double theta) {
        return smoothed_gradient(SmoothedLoss(make_loss(loss, theta), tau), Dataset(X, y), beta);
      },
      py::arg("X"), py::arg("y"), py::arg("beta"), py::arg("loss"),
      py::arg("tau") = kDefaultTau, py::arg("theta") = 0.5);

  m.def(
      "lipschitz_constant",
      [](const Matrix& X, const std::string& loss, double tau) {
        return lipschitz_constant(Dataset(X, Vector::Ones(X.rows())), tau,
                                  make_loss(loss, 0.5).family());
      },
      py::arg("X"), py::arg("loss"), py::arg("tau") = kDefaultTau);

  m.def("prox_sorted_l1",
        [](const Vector& gamma, const Vector& weights) { return prox_sorted_l1(gamma, weights); },
        py::arg("gamma"), py::arg("weights"));
  m.def("soft_threshold", &soft_threshold, py::arg("gamma"), py::arg("lam"));
  m.def("slope_norm", &slope_norm, py::arg("weights"), py::arg("beta"));
  m.def("slope_weights_default", &slope_weights_default, py::arg("p"));

  m.def(
      "fit",
      [](const Matrix& X, const Vector& y, double eta, const std::string& loss,
         const std::string& penalty, double lam, const std::optional<Vector>& weights,
         double tau, double theta, double epsilon, int t_max,
         const std::optional<Vector>& init) {
        const Dataset data(X, y);
        const SolverConfig cfg = make_config(epsilon, t_max, tau);
        const SmoothedLoss s(make_loss(loss, theta), tau);
        return to_dict(fit(data, s, make_penalty(penalty, X.cols(), lam, weights), eta, cfg,
                           init));
      },
      py::arg("X"), py::arg("y"), py::arg("eta"), py::arg("loss") = "logistic",
      py::arg("penalty") = "slope", py::arg("lam") = 1.0, py::arg("weights") = py::none(),
      py::arg("tau") = kDefaultTau, py::arg("theta") = 0.5, py::arg("epsilon") = 1e-10,
      py::arg("t_max") = 5000, py::arg("init") = py::none());

  m.def(
      "eta_max",
      [](const Matrix& X, const Vector& y, const std::string& loss, const std::string& penalty,
         double lam, const std::optional<Vector>& weights, double tau, double theta) {
        return eta_max(Dataset(X, y), SmoothedLoss(make_loss(loss, theta), tau),
                       make_penalty(penalty, X.cols(), lam, weights));
      },
      py::arg("X"), py::arg("y"), py::arg("loss") = "logistic", py::arg("penalty") = "slope",
      py::arg("lam") = 1.0, py::arg("weights") = py::none(), py::arg("tau") = kDefaultTau,
      py::arg("theta") = 0.5);

  m.def(
      "fit_path",
      [](const Matrix& X, const Vector& y, const std::string& loss, const std::string& penalty,
         int grid_size, double tau, double theta, double epsilon, int t_max) {
        const PathResult path =
            fit_path(Dataset(X, y), SmoothedLoss(make_loss(loss, theta), tau),
                     make_penalty(penalty, X.cols(), 1.0, std::nullopt), grid_size,
                     make_config(epsilon, t_max, tau));
        Matrix betas(path.fits.size(), X.cols());
        for (std::size_t m = 0; m < path.fits.size(); ++m) {
          betas.row(static_cast<Eigen::Index>(m)) = path.fits[m].beta.transpose();
        }
        return py::make_tuple(path.etas, betas);
      },
      py::arg("X"), py::arg("y"), py::arg("loss") = "logistic", py::arg("penalty") = "slope",
      py::arg("grid_size") = 50, py::arg("tau") = kDefaultTau, py::arg("theta") = 0.5,
      py::arg("epsilon") = 1e-10, py::arg("t_max") = 5000);

  m.def(
      "generate",
      [](int n, int p, int k_star, double rho, std::uint64_t seed, int count) {
        const ExperimentSpec spec = make_spec(n, p, k_star, rho, seed, 2, 2);
        Rng rng(seed);
        const Dataset d = generate(spec, count, rng);
        return py::make_tuple(d.X(), d.y());
      },
      py::arg("n") = 100, py::arg("p") = 1000, py::arg("k_star") = 10, py::arg("rho") = 0.1,
      py::arg("seed") = 1, py::arg("count") = 100);

  m.def(
      "run_table",
      [](int n, int p, int k_star, double rho, std::uint64_t seed, int val_size, int test_size,
         int replications, const std::vector<std::string>& methods,
         const std::vector<std::string>& losses, int grid_size, double tau, double epsilon,
         int t_max, int threads, const std::string& format) {
        const ExperimentSpec spec = make_spec(n, p, k_star, rho, seed, val_size, test_size);
        std::vector<Method> ms;
        for (const auto& name : methods) ms.push_back(parse_method(name));
        std::vector<LossFamily> ls;
        for (const auto& name : losses) ls.push_back(parse_task(name));
        RunConfig cfg;
        cfg.solver = make_config(epsilon, t_max, tau);
        cfg.grid_size = grid_size;
        cfg.threads = threads;
        MetricsReport report;
        {
          py::gil_scoped_release release;
          report = run_table(spec, replications, ms, ls, cfg);
        }
        std::ostringstream out;
        emit_report(report, parse_format(format), out);
        return out.str();
      },
      py::arg("n") = 100, py::arg("p") = 1000, py::arg("k_star") = 10, py::arg("rho") = 0.1,
      py::arg("seed") = 1, py::arg("val_size") = 10000, py::arg("test_size") = 10000,
      py::arg("replications") = 10,
      py::arg("methods") = std::vector<std::string>{"l1", "l2", "slope"},
      py::arg("losses") = std::vector<std::string>{"svm", "logreg"}, py::arg("grid_size") = 50,
      py::arg("tau") = kDefaultTau, py::arg("epsilon") = 1e-10, py::arg("t_max") = 5000,
      py::arg("threads") = 0, py::arg("format") = "csv");
}
