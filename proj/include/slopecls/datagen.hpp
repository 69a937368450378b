#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "slopecls/losses.hpp"
#include "slopecls/rng.hpp"

namespace slopecls {

/// Two-class equicorrelated Gaussian design.
///
/// Class +1 has mean (1_{k*}, 0_{p-k*}), class -1 the negated mean, and both
/// share Sigma = (1 - rho) I + rho 1 1^T.
struct ExperimentSpec {
  int n = 100;
  int p = 1000;
  int k_star = 10;
  double rho = 0.1;
  std::uint64_t seed = 1;
  int val_size = 10000;
  int test_size = 10000;

  void validate() const;
};

/// `count` rows, half from each class, shuffled by `rng`. Each row is
/// mu_y + sqrt(1 - rho) z + sqrt(rho) g 1 with z ~ N(0, I_p), g ~ N(0, 1).
Dataset generate(const ExperimentSpec& spec, int count, Rng& rng);

/// Estimate of the population minimizer: the loss fitted with a 1e-6 ridge
/// penalty on the first k* columns of `reference`, zero-padded to length p.
Vector theoretical_minimizer(const Dataset& reference, int k_star,
                             const LossModel& loss);

/// As above on a fresh reference sample of spec.test_size rows drawn from
/// `rng`.
Vector theoretical_minimizer(const ExperimentSpec& spec, const LossModel& loss,
                             Rng& rng);

/// Header "y,x1,...,xp" followed by one row per sample.
void write_csv(const Dataset& data, std::ostream& out);
void write_csv(const Dataset& data, const std::string& path);

}  // namespace slopecls
