#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "slopecls/prox.hpp"
#include "slopecls/solver.hpp"

using namespace slopecls;

TEST_SUITE("prox") {
  TEST_CASE("slope norm") {
    CHECK(slope_norm(Eigen::Vector2d(2, 1), Eigen::Vector2d(1, 3)) == 7.0);
    CHECK(slope_norm(Eigen::Vector2d(2, 1), Eigen::Vector2d(-1, -3)) == 7.0);
    CHECK(slope_norm(Eigen::Vector3d(3, 2, 1), Vector::Zero(3)) == 0.0);
    const Vector beta = Eigen::Vector4d(0.5, -2.0, 1.5, 0.0);
    CHECK(slope_norm(Vector::Constant(4, 0.7), beta) ==
          doctest::Approx(0.7 * beta.lpNorm<1>()));
    CHECK_THROWS_AS(slope_norm(Vector::Ones(2), Vector::Ones(3)),
                    std::invalid_argument);
  }

  TEST_CASE("slope norm equals the max over permutations") {
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
      const Vector w = oracle::random_decreasing_weights(rng, 5);
      const Vector b = oracle::random_vector(rng, 5);
      std::vector<int> perm(5);
      std::iota(perm.begin(), perm.end(), 0);
      double best = 0.0;
      do {
        double total = 0.0;
        for (int j = 0; j < 5; ++j) total += w[j] * std::abs(b[perm[j]]);
        best = std::max(best, total);
      } while (std::next_permutation(perm.begin(), perm.end()));
      CHECK(slope_norm(w, b) == doctest::Approx(best).epsilon(1e-14));
    }
  }

  TEST_CASE("soft threshold and ridge shrink") {
    CHECK(soft_threshold(Vector::Constant(1, 1.5), 1.0)[0] == 0.5);
    CHECK(soft_threshold(Vector::Constant(1, -0.3), 1.0)[0] == 0.0);
    CHECK(soft_threshold(Vector::Constant(1, -1.5), 1.0)[0] == -0.5);
    const Vector g = Eigen::Vector3d(1.0, -2.0, 0.25);
    CHECK(soft_threshold(g, 0.0) == g);
    CHECK_THROWS_AS(soft_threshold(g, -1.0), std::invalid_argument);

    CHECK(l2_shrink(Eigen::Vector2d(2, -2), 1.0) == Vector(Eigen::Vector2d(1, -1)));
    CHECK(l2_shrink(g, 0.0) == g);
    CHECK(l2_shrink(Vector::Zero(3), 4.0) == Vector::Zero(3));
  }

  TEST_CASE("sorted-L1 prox reference values") {
    // Oracle: enumeration over block partitions; expected (1, 0).
    const Vector gamma = Eigen::Vector2d(3, 1);
    const Vector w = Eigen::Vector2d(2, 1);
    const Vector oracle_value = oracle::prox_sorted_l1_enumerate(gamma, w);
    CHECK(oracle_value[0] == doctest::Approx(1.0));
    CHECK(oracle_value[1] == doctest::Approx(0.0));
    const Vector got = prox_sorted_l1(gamma, w);
    CHECK(got[0] == doctest::Approx(1.0));
    CHECK(got[1] == 0.0);

    CHECK(prox_sorted_l1(Vector::Zero(4), slope_weights_default(4)) == Vector::Zero(4));
  }

  TEST_CASE("sorted-L1 prox with constant weights is soft thresholding") {
    Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
      const Vector gamma = oracle::random_vector(rng, 12, 2.0);
      const double lambda = rng.uniform(0.1, 2.0);
      const Vector diff = prox_sorted_l1(gamma, Vector::Constant(12, lambda)) -
                          soft_threshold(gamma, lambda);
      CHECK(diff.lpNorm<Eigen::Infinity>() <= 1e-14);
    }
  }

  TEST_CASE("sorted-L1 prox matches the enumeration oracle") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = static_cast<Eigen::Index>(1 + rng.below(8));
      const Vector gamma = oracle::random_vector(rng, p, 2.0);
      const Vector w = trial % 2 == 0 ? oracle::random_decreasing_weights(rng, p)
                                      : Vector(slope_weights_default(p) *
                                               rng.uniform(0.1, 1.5));
      const Vector got = prox_sorted_l1(gamma, w);
      const Vector expected = oracle::prox_sorted_l1_enumerate(gamma, w);
      CHECK((got - expected).lpNorm<Eigen::Infinity>() <= 1e-8);
    }
  }

  TEST_CASE("sorted-L1 prox handles ties and exact zeros") {
    const Vector gamma = Eigen::Vector4d(1.0, -1.0, 1.0, 0.0);
    const Vector w = Eigen::Vector4d(0.4, 0.3, 0.2, 0.1);
    const Vector got = prox_sorted_l1(gamma, w);
    const Vector expected = oracle::prox_sorted_l1_enumerate(gamma, w);
    CHECK((got - expected).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK(got[3] == 0.0);
    // Ties are averaged: the three unit entries share one level.
    CHECK(std::abs(got[0]) == doctest::Approx(std::abs(got[1])));
    CHECK(std::abs(got[1]) == doctest::Approx(std::abs(got[2])));
  }

  TEST_CASE("sorted-L1 prox preserves signs and order; bounded work") {
    Rng rng(4);
    for (int trial = 0; trial < 300; ++trial) {
      const auto p = static_cast<Eigen::Index>(1 + rng.below(40));
      const Vector gamma = oracle::random_vector(rng, p, 1.5);
      const Vector w = oracle::random_decreasing_weights(rng, p);
      ProxSortedL1Stats stats;
      const Vector out = prox_sorted_l1(gamma, w, &stats);
      CHECK(stats.pushes == p);
      CHECK(stats.merges <= p - 1);

      std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return std::abs(gamma[a]) > std::abs(gamma[b]);
      });
      for (Eigen::Index j = 0; j < p; ++j) {
        CHECK((out[j] == 0.0 || std::signbit(out[j]) == std::signbit(gamma[j])));
      }
      for (std::size_t k = 1; k < order.size(); ++k) {
        CHECK(std::abs(out[order[k]]) <= std::abs(out[order[k - 1]]) + 1e-15);
      }
    }
  }

  TEST_CASE("prox output beats nearby perturbations") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const Vector gamma = oracle::random_vector(rng, 10, 2.0);
      const Vector w = oracle::random_decreasing_weights(rng, 10);
      const Vector out = prox_sorted_l1(gamma, w);
      const double value = oracle::prox_objective(gamma, w, out);
      for (int k = 0; k < 1000; ++k) {
        const Vector nearby = out + oracle::random_vector(rng, 10, 1e-4);
        CHECK(value <= oracle::prox_objective(gamma, w, nearby) + 1e-15);
      }
    }
  }

  TEST_CASE("all prox kinds are nonexpansive") {
    Rng rng(6);
    const RegWeights regs[] = {RegWeights::l1(0.7), RegWeights::l2(0.7),
                               RegWeights::slope(slope_weights_default(8))};
    for (const auto& reg : regs) {
      for (int trial = 0; trial < 500; ++trial) {
        const Vector a = oracle::random_vector(rng, 8, 2.0);
        const Vector b = oracle::random_vector(rng, 8, 2.0);
        const double step = rng.uniform(0.1, 1.0);
        const double eta = rng.uniform(0.0, 2.0);
        const double lhs =
            (apply_prox(reg, a, step, eta) - apply_prox(reg, b, step, eta)).norm();
        CHECK(lhs <= (a - b).norm() + 1e-12);
      }
    }
  }

  TEST_CASE("apply_prox dispatch scales weights by eta * step") {
    Rng rng(7);
    const Vector g = oracle::random_vector(rng, 6, 2.0);
    CHECK(apply_prox(RegWeights::l1(1.0), g, 0.5, 2.0) == soft_threshold(g, 1.0));
    CHECK(apply_prox(RegWeights::l2(2.0), g, 0.5, 1.0) == l2_shrink(g, 1.0));
    const Vector w = oracle::random_decreasing_weights(rng, 6);
    CHECK(apply_prox(RegWeights::slope(w), g, 1.0, 1.0) == prox_sorted_l1(g, w));
    for (const auto& reg : {RegWeights::l1(), RegWeights::l2(), RegWeights::slope(w)}) {
      CHECK(apply_prox(reg, g, 0.3, 0.0) == g);
    }
    CHECK_THROWS_AS(apply_prox(RegWeights::l1(), g, 0.0, 1.0), std::invalid_argument);
  }

  TEST_CASE("invalid slope weights are rejected") {
    CHECK_THROWS_AS(RegWeights::slope(Eigen::Vector2d(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(RegWeights::slope(Eigen::Vector2d(1, 0)), std::invalid_argument);
    CHECK_THROWS_AS(prox_sorted_l1(Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(prox_sorted_l1(Eigen::Vector2d(1, 1), Eigen::Vector2d(1, -1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(RegWeights::l1(-0.1), std::invalid_argument);
  }

  TEST_CASE("penalty values") {
    const Vector b = Eigen::Vector3d(1.0, -2.0, 0.5);
    CHECK(RegWeights::l1(2.0).value(b) == doctest::Approx(7.0));
    CHECK(RegWeights::l2(2.0).value(b) == doctest::Approx(5.25));
    CHECK(RegWeights::slope(Eigen::Vector3d(3, 2, 1)).value(b) ==
          doctest::Approx(6.0 + 2.0 + 0.5));
  }
}
