#include "slopecls/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slopecls/solver.hpp"

namespace slopecls {

namespace {

// Reference fits use a finer smoothing than the path solver so that the
// hinge minimizer is approximated closely.
constexpr double kReferenceTau = 0.05;
constexpr double kReferenceEta = 1e-6;
constexpr double kReferenceEpsilon = 1e-12;
constexpr int kReferenceMaxIter = 20000;

}  // namespace

void ExperimentSpec::validate() const {
  if (n < 2 || p < 1 || k_star < 1) {
    throw std::invalid_argument("n, p and k_star must be positive (n >= 2)");
  }
  if (k_star > p) throw std::invalid_argument("k_star must not exceed p");
  if (k_star > n) throw std::invalid_argument("k_star must not exceed n");
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::invalid_argument("rho must lie in [0, 1)");
  }
  if (val_size < 2 || test_size < 2) {
    throw std::invalid_argument("validation and test sizes must be >= 2");
  }
  if (n % 2 != 0 || val_size % 2 != 0 || test_size % 2 != 0) {
    throw std::invalid_argument("sample sizes must be even");
  }
}

Dataset generate(const ExperimentSpec& spec, int count, Rng& rng) {
  if (count < 2 || count % 2 != 0) {
    throw std::invalid_argument("sample count must be even and >= 2, got " +
                                std::to_string(count));
  }
  if (spec.k_star < 1 || spec.k_star > spec.p || !(spec.rho >= 0.0) ||
      !(spec.rho < 1.0)) {
    throw std::invalid_argument("invalid experiment spec");
  }
  const Eigen::Index p = spec.p;
  const double own = std::sqrt(1.0 - spec.rho);
  const double shared = std::sqrt(spec.rho);

  Matrix X(count, p);
  Vector y(count);
  const int half = count / 2;
  for (int i = 0; i < count; ++i) {
    const double label = i < half ? 1.0 : -1.0;
    const double g = rng.normal();
    for (Eigen::Index j = 0; j < p; ++j) {
      const double mean = j < spec.k_star ? label : 0.0;
      X(i, j) = mean + own * rng.normal() + shared * g;
    }
    y[i] = label;
  }

  // Fisher-Yates over rows.
  for (int i = count - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    if (j != i) {
      X.row(i).swap(X.row(j));
      std::swap(y[i], y[j]);
    }
  }
  return Dataset(std::move(X), std::move(y));
}

Vector theoretical_minimizer(const Dataset& reference, int k_star,
                             const LossModel& loss) {
  if (loss.family() == LossFamily::Quantile) {
    throw std::invalid_argument("theoretical minimizer needs hinge or logistic");
  }
  const Dataset relevant = reference.leading_columns(k_star);
  SolverConfig cfg;
  cfg.epsilon = kReferenceEpsilon;
  cfg.t_max = kReferenceMaxIter;
  cfg.tau = kReferenceTau;
  const SmoothedLoss smoothed(loss, cfg.tau);
  const FitResult result =
      fit(relevant, smoothed, RegWeights::l2(1.0), kReferenceEta, cfg);

  Vector full = Vector::Zero(reference.p());
  full.head(k_star) = result.beta;
  return full;
}

Vector theoretical_minimizer(const ExperimentSpec& spec, const LossModel& loss,
                             Rng& rng) {
  const Dataset reference = generate(spec, spec.test_size, rng);
  return theoretical_minimizer(reference, spec.k_star, loss);
}

void write_csv(const Dataset& data, std::ostream& out) {
  out << "y";
  for (Eigen::Index j = 0; j < data.p(); ++j) out << ",x" << (j + 1);
  out << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", data.y()[i]);
    out << buf;
    for (Eigen::Index j = 0; j < data.p(); ++j) {
      std::snprintf(buf, sizeof buf, ",%.17g", data.X()(i, j));
      out << buf;
    }
    out << '\n';
  }
}

void write_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(data, out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace slopecls
