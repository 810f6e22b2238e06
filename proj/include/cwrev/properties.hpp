#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cwrev/profile.hpp"

namespace cwrev {

/// Result of one executable property. `violations` counts every failed check.
struct PropertyOutcome {
  std::string id;
  std::size_t samples = 0;
  double worst_residual = 0;
  std::size_t violations = 0;
  double elapsed_seconds = 0;
  std::vector<PropertyOutcome> parts;

  bool passed() const noexcept { return violations == 0; }
};

/// Random odd-harmonic profile: coefficient k is uniform in [-1, 1] times 2^-k,
/// with between 2 and `max_terms` terms.
SineSeriesProfile random_sine_profile(std::mt19937_64& rng, std::size_t max_terms = 8);

/// Random admissible piecewise profile with k breakpoints.
PiecewiseTrigProfile random_piecewise_profile(std::mt19937_64& rng, std::size_t k);

/// F <= 1e-12 on random sine-series profiles, F = 0 for the first harmonic
/// alone, and F <= -1e-9 once any higher harmonic of size >= 1e-3 is present.
PropertyOutcome run_wirtinger(std::size_t samples, std::uint64_t seed);

/// Width constancy, convexity and pole closure at w in {w0, w0 + 0.1, w0 + 1},
/// and failure of convexity at w0 - 0.05.
PropertyOutcome run_bijection_checks(std::size_t samples, std::uint64_t seed);

/// Monotonicity of I in w, exactness of the quadratic expansion, merge
/// monotonicity, the sign laws of the perturbation derivative and the lower
/// bound F >= 1 - pi/3 over piecewise profiles.
PropertyOutcome run_variational_checks(std::size_t samples, std::uint64_t seed);

}  // namespace cwrev
