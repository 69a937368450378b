#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "slopecls/datagen.hpp"

using namespace slopecls;

namespace {

ExperimentSpec small_spec(int p, int k, double rho) {
  ExperimentSpec spec;
  spec.n = 100;
  spec.p = p;
  spec.k_star = k;
  spec.rho = rho;
  spec.seed = 42;
  return spec;
}

// Within-class centered sample covariance.
Matrix centered_covariance(const Dataset& d, int k_star) {
  Matrix centered = d.X();
  for (Eigen::Index i = 0; i < d.n(); ++i) {
    for (int j = 0; j < k_star; ++j) centered(i, j) -= d.y()[i];
  }
  return centered.transpose() * centered / static_cast<double>(d.n());
}

}  // namespace

TEST_SUITE("datagen") {
  TEST_CASE("rng streams are deterministic and distinct") {
    Rng a = Rng::stream(7, 0, StreamRole::Train);
    Rng b = Rng::stream(7, 0, StreamRole::Train);
    Rng c = Rng::stream(7, 0, StreamRole::Test);
    Rng d = Rng::stream(7, 1, StreamRole::Train);
    const auto first = a.next_u64();
    CHECK(first == b.next_u64());
    CHECK(first != c.next_u64());
    CHECK(first != d.next_u64());
    Rng u(1);
    double lo = 1.0;
    double hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double x = u.uniform();
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      CHECK(u.below(7) < 7);
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
  }

  TEST_CASE("class balance and labels") {
    const auto spec = small_spec(4, 2, 0.1);
    Rng rng(1);
    const Dataset d = generate(spec, 200, rng);
    CHECK(d.n() == 200);
    CHECK(d.p() == 4);
    CHECK(d.has_binary_labels());
    CHECK(d.y().sum() == 0.0);
    CHECK_THROWS_AS(generate(spec, 31, rng), std::invalid_argument);
  }

  TEST_CASE("determinism") {
    const auto spec = small_spec(6, 3, 0.3);
    Rng a(9);
    Rng b(9);
    const Dataset da = generate(spec, 50, a);
    const Dataset db = generate(spec, 50, b);
    CHECK(da.X() == db.X());
    CHECK(da.y() == db.y());
  }

  TEST_CASE("class means") {
    // p = 4, k* = 2: means (+1, +1, 0, 0) and (-1, -1, 0, 0).
    const auto spec = small_spec(4, 2, 0.1);
    Rng rng(2);
    const Dataset d = generate(spec, 20000, rng);
    Vector plus = Vector::Zero(4);
    Vector minus = Vector::Zero(4);
    for (Eigen::Index i = 0; i < d.n(); ++i) {
      if (d.y()[i] > 0) {
        plus += d.X().row(i).transpose();
      } else {
        minus += d.X().row(i).transpose();
      }
    }
    plus /= 10000.0;
    minus /= 10000.0;
    const Vector mu = Eigen::Vector4d(1, 1, 0, 0);
    CHECK((plus - mu).lpNorm<Eigen::Infinity>() <= 0.05);
    CHECK((minus + mu).lpNorm<Eigen::Infinity>() <= 0.05);
  }

  TEST_CASE("independent columns at rho = 0") {
    const auto spec = small_spec(4, 2, 0.0);
    Rng rng(3);
    const Dataset d = generate(spec, 100000, rng);
    const Matrix cov = centered_covariance(d, 2);
    CHECK((cov - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 0.02);
  }

  TEST_CASE("equicorrelation") {
    const double rho = 0.4;
    const auto spec = small_spec(5, 2, rho);
    Rng rng(4);
    const Dataset d = generate(spec, 100000, rng);
    const Matrix cov = centered_covariance(d, 2);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        if (i == j) continue;
        const double corr = cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
        CHECK(std::abs(corr - rho) <= 0.03);
      }
    }
  }

  TEST_CASE("theoretical minimizer support and symmetry") {
    auto spec = small_spec(12, 4, 0.1);
    spec.test_size = 10000;
    for (const auto& loss : {LossModel::logistic(), LossModel::hinge()}) {
      Rng rng(5);
      const Vector beta = theoretical_minimizer(spec, loss, rng);
      REQUIRE(beta.size() == 12);
      CHECK(beta.tail(8).norm() == 0.0);
      const Vector dir = beta.head(4) / beta.norm();
      CHECK(dir.maxCoeff() - dir.minCoeff() <= 0.05);
      CHECK(dir.minCoeff() > 0.0);
    }
    Rng rng(5);
    CHECK_THROWS_AS(theoretical_minimizer(spec, LossModel::quantile(0.5), rng),
                    std::invalid_argument);
  }

  TEST_CASE("logistic minimizer aligns with the mean direction at rho = 0") {
    auto spec = small_spec(10, 5, 0.0);
    spec.test_size = 10000;
    Rng rng(6);
    const Vector beta = theoretical_minimizer(spec, LossModel::logistic(), rng);
    Vector mu = Vector::Zero(10);
    mu.head(5).setOnes();
    CHECK(beta.dot(mu) / (beta.norm() * mu.norm()) >= 0.99);
  }

  TEST_CASE("csv layout") {
    const Dataset d(Matrix::Identity(2, 3).eval(), Vector(Eigen::Vector2d(1, -1)));
    std::ostringstream out;
    write_csv(d, out);
    CHECK(out.str() == "y,x1,x2,x3\n1,1,0,0\n-1,0,1,0\n");
  }

  TEST_CASE("spec validation") {
    ExperimentSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.k_star = spec.p + 1;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = ExperimentSpec{};
    spec.rho = 1.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = ExperimentSpec{};
    spec.n = 101;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  }
}
