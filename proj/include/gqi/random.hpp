#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gqi/gaussian.hpp"
#include "gqi/metric.hpp"

namespace gqi {

/// Deterministic RNG (splitmix64 + Box-Muller), independent of the standard
/// library's distribution implementations so seeded runs reproduce everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();

 private:
  uint64_t state_;
};

/// Random symplectic built from elementary squeezers, phases, and beamsplitters.
Eigen::MatrixXd random_symplectic(Rng& rng, int n_modes);

/// Random strictly-mixed valid state: V = S diag(nu) S^T with nu in
/// [1 + nu_margin, nu_max], normally distributed mean.
GaussianState random_state(Rng& rng, int n_modes, double nu_margin = 0.1,
                           double nu_max = 3.0);

TangentVector random_tangent(Rng& rng, int n_modes);

/// Random valid two-mode probe for the illumination tests.
inline GaussianState random_probe(Rng& rng) { return random_state(rng, 2); }

}  // namespace gqi
