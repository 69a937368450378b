#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "slopecls/losses.hpp"

using namespace slopecls;

TEST_SUITE("losses") {
  TEST_CASE("loss values at reference points") {
    CHECK(loss_value(LossModel::hinge(), 0.0, 1.0) == 1.0);
    CHECK(loss_value(LossModel::logistic(), 0.0, 1.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(loss_value(LossModel::quantile(0.5), 2.0, 0.0) == 1.0);
    CHECK(loss_value(LossModel::quantile(0.5), -2.0, 0.0) == 1.0);
    CHECK(loss_value(LossModel::quantile(0.9), -1.0, 0.0) ==
          doctest::Approx(0.1));
  }

  TEST_CASE("logistic loss is stable for large margins") {
    const auto lr = LossModel::logistic();
    CHECK(loss_value(lr, 800.0, 1.0) == 0.0);
    CHECK(loss_value(lr, -800.0, 1.0) == doctest::Approx(800.0));
    CHECK(std::isfinite(loss_subgradient(lr, -800.0, 1.0)));
  }

  TEST_CASE("subgradients at reference points") {
    CHECK(loss_subgradient(LossModel::hinge(), 2.0, 1.0) == 0.0);
    CHECK(loss_subgradient(LossModel::logistic(), 0.0, 1.0) == -0.5);
  }

  TEST_CASE("hinge kink uses the active indicator and bounds both secants") {
    const auto hinge = LossModel::hinge();
    const double g = loss_subgradient(hinge, 1.0, 1.0);
    CHECK(g == -1.0);
    CHECK(loss_subgradient(hinge, 0.0, 1.0) == -1.0);
    const double h = 1e-6;
    const double left = (loss_value(hinge, 1.0, 1.0) - loss_value(hinge, 1.0 - h, 1.0)) / h;
    const double right = (loss_value(hinge, 1.0 + h, 1.0) - loss_value(hinge, 1.0, 1.0)) / h;
    CHECK(left == doctest::Approx(-1.0));
    CHECK(right == doctest::Approx(0.0));
    // Subgradient of a convex function lies between the one-sided slopes.
    CHECK(g >= left - 1e-9);
    CHECK(g <= right + 1e-9);
    // Away from the kink the subgradient equals the secant slope.
    const double fd0 = (loss_value(hinge, h, 1.0) - loss_value(hinge, -h, 1.0)) / (2 * h);
    CHECK(loss_subgradient(hinge, 0.0, 1.0) == doctest::Approx(fd0));
    CHECK(loss_subgradient(hinge, 0.0, -1.0) == 1.0);
  }

  TEST_CASE("quantile subgradient at zero uses 1(t <= 0) = 1") {
    CHECK(loss_subgradient(LossModel::quantile(0.3), 0.0, 0.0) ==
          doctest::Approx(-0.7));
    CHECK(loss_subgradient(LossModel::quantile(0.3), 1.0, 0.0) ==
          doctest::Approx(0.3));
  }

  TEST_CASE("Lipschitz constants") {
    CHECK(LossModel::hinge().lipschitz() == 1.0);
    CHECK(LossModel::logistic().lipschitz() == 1.0);
    CHECK(LossModel::quantile(0.2).lipschitz() == doctest::Approx(0.8));
    CHECK(LossModel::quantile(0.7).lipschitz() == doctest::Approx(0.7));
    CHECK_THROWS_AS(LossModel::quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(LossModel::quantile(1.0), std::invalid_argument);
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(loss_value(LossModel::hinge(), NAN, 1.0), std::domain_error);
    CHECK_THROWS_AS(loss_value(LossModel::logistic(), 1.0, INFINITY),
                    std::domain_error);
    CHECK_THROWS_AS(loss_value(LossModel::hinge(), 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(loss_subgradient(LossModel::hinge(), INFINITY, 1.0),
                    std::domain_error);
  }

  TEST_CASE("dataset validation") {
    CHECK_THROWS_AS(Dataset(Matrix(0, 3), Vector(0)), std::invalid_argument);
    CHECK_THROWS_AS(Dataset(Matrix::Ones(3, 2), Vector::Ones(2)),
                    std::invalid_argument);
    Matrix bad = Matrix::Ones(2, 2);
    bad(1, 1) = NAN;
    CHECK_THROWS_AS(Dataset(bad, Vector::Ones(2)), std::invalid_argument);
    const Dataset ok(Matrix::Ones(2, 3), Vector::Ones(2));
    CHECK(ok.has_binary_labels());
    CHECK(ok.leading_columns(2).p() == 2);
  }

  TEST_CASE("empirical risk") {
    Rng rng(3);
    const Dataset d = oracle::random_dataset(rng, 12, 4, LossFamily::Hinge);
    const Vector zero = Vector::Zero(4);
    CHECK(empirical_risk(LossModel::hinge(), d, zero) == 1.0);
    CHECK(empirical_risk(LossModel::logistic(), d, zero) ==
          doctest::Approx(std::log(2.0)));

    const Dataset single(Matrix::Ones(1, 1), Vector::Ones(1));
    CHECK(empirical_risk(LossModel::hinge(), single, Vector::Constant(1, 2.0)) == 0.0);
    CHECK_THROWS_AS(empirical_risk(LossModel::hinge(), d, Vector::Zero(3)),
                    std::invalid_argument);
  }

  TEST_CASE("convexity, Lipschitz bound and subgradient inequality") {
    Rng rng(17);
    const LossModel models[] = {LossModel::hinge(), LossModel::logistic(),
                                LossModel::quantile(0.25),
                                LossModel::quantile(0.8)};
    for (const auto& model : models) {
      for (int trial = 0; trial < 2000; ++trial) {
        const double t1 = rng.uniform(-4.0, 4.0);
        const double t2 = rng.uniform(-4.0, 4.0);
        const double a = rng.uniform();
        const double y = model.is_classification()
                             ? (rng.uniform() < 0.5 ? -1.0 : 1.0)
                             : rng.normal();
        const double f1 = loss_value(model, t1, y);
        const double f2 = loss_value(model, t2, y);
        CHECK(f1 >= 0.0);
        CHECK(loss_value(model, a * t1 + (1 - a) * t2, y) <=
              a * f1 + (1 - a) * f2 + 1e-12);
        CHECK(std::abs(f1 - f2) <= model.lipschitz() * std::abs(t1 - t2) + 1e-12);
        const double g = loss_subgradient(model, t1, y);
        CHECK(std::abs(g) <= model.lipschitz());
        CHECK(f2 - f1 >= g * (t2 - t1) - 1e-12);
      }
    }
  }

  TEST_CASE("hinge is a translate of the theta = 0 check loss") {
    // rho_0(t) = (0 - 1(t <= 0)) t = max(0, -t), so hinge(m) = rho_0(m - 1).
    for (int k = -50; k <= 50; ++k) {
      const double m = 0.1 * k;
      const double t = m - 1.0;
      const double rho0 = (0.0 - (t <= 0.0 ? 1.0 : 0.0)) * t;
      CHECK(loss_value(LossModel::hinge(), m, 1.0) == doctest::Approx(rho0));
      CHECK(rho0 == (t > 0.0 ? 0.0 : -t));
    }
  }
}
