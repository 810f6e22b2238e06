#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cwrev/profile.hpp"

namespace cwrev {

/// Normalized coefficients of three consecutive pieces [t0,t1], [t1,t2], [t2,t3]
/// whose signs of h + h'' read (+, -, +) after flipping h if needed:
/// x = -A of the first piece, y = A of the middle piece, z = -A of the last.
/// Then cos t1 = (x + y) / 2 and cos t2 = (y + z) / 2.
struct TripleParams {
  double x = 0;
  double y = 0;
  double z = 0;
};

/// Three successive discontinuities of h + h'' and the following one (or pi/2).
struct Triple {
  double t0 = 0;
  double t1 = 0;
  double t2 = 0;
  double t3 = 0;
  int sign = 1;  // sign of h + h'' on [t0, t1]
  TripleParams params;
};

/// The triple whose middle discontinuity t1 is breakpoints()[middle]. The
/// discontinuity at t = 0 serves as t0 when middle == 0. Throws
/// InfeasibleError if there is no breakpoint after t1.
Triple triple_at(const PiecewiseTrigProfile& profile, std::size_t middle);

/// Replaces the discontinuities t1 < t2 of a triple by the single point
/// t* = arccos((x + z) / 2). The result agrees with h on [0, t0] and with -h
/// (up to a multiple of sin t, which leaves F unchanged) on [t3, pi/2].
/// Throws InfeasibleError if t* falls outside (t0, t3).
PiecewiseTrigProfile merge_triple(const PiecewiseTrigProfile& profile, std::size_t middle);

/// F(merged) - F(h) = (z - x) acos((x+z)/2) + (x - y) acos((x+y)/2) + (y - z) acos((y+z)/2).
/// Throws DomainError when an acos argument leaves [-1, 1].
double delta_F_merge(const TripleParams& params);

/// d/d eps of F under y -> y + eps with t0 and t3 held fixed:
/// acos((x+y)/2) - acos((y+z)/2) + (x-y)/sqrt(4-(x+y)^2) + (y-z)/sqrt(4-(y+z)^2).
/// Throws DomainError unless |x + y| < 2 and |y + z| < 2.
double dF_deps(const TripleParams& params);

/// Shifts y by eps: both cos t1 and cos t2 move by eps / 2, every other
/// breakpoint and piece is unchanged. Throws InfeasibleError if the new
/// breakpoints leave (t0, t3) or lose their order.
PiecewiseTrigProfile perturb_middle(const PiecewiseTrigProfile& profile, std::size_t middle,
                                    double eps);

/// Rescales decreasing cosines in (0, 1) so that their alternating sum is 1/2.
/// Empty when the rescaled first cosine would reach 1.
std::optional<std::vector<double>> project_cosines_to_closure(std::vector<double> cosines);

/// Random admissible breakpoint cosines (decreasing, in (0, 1), closure exact):
/// uniform draws, sorted, then projected with project_cosines_to_closure.
std::vector<double> sample_feasible_cosines(std::size_t k, std::mt19937_64& rng);

/// Removes breakpoints closer than threshold to 0, to pi/2, or to each other,
/// which is the limit profile as those gaps close. The remaining breakpoints
/// are reprojected onto the closure constraint.
PiecewiseTrigProfile collapse_collisions(const PiecewiseTrigProfile& profile, double threshold);

/// Smallest of tau_1, the gaps tau_{i+1} - tau_i, and pi/2 - tau_k.
double min_breakpoint_gap(const PiecewiseTrigProfile& profile);

struct TraceEntry {
  std::vector<double> breakpoints;
  int leading_sign = 1;
  double F = 0;
  bool interior = true;  // every gap at least the collision threshold
};

struct SearchOptions {
  std::size_t k = 1;
  std::size_t seeds = 1;
  std::uint64_t rng_seed = 0;
  int leading_sign = 1;
  double collision_threshold = 1e-6;
  int max_iterations = 20000;
};

struct SearchResult {
  PiecewiseTrigProfile best;
  double best_F = 0;
  std::vector<TraceEntry> trace;
  bool converged = false;
};

/// Multi-start Nelder-Mead over breakpoint configurations with k interior
/// breakpoints, minimizing the closed-form F. The last breakpoint is
/// eliminated through the closure constraint. When a run drives two
/// breakpoints (or a breakpoint and an end of [0, pi/2]) closer than the
/// collision threshold, the configuration is collapsed to the lower family
/// and the search continues there.
SearchResult minimize(const SearchOptions& options);

}  // namespace cwrev
