#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cwrev/errors.hpp"
#include "cwrev/functionals.hpp"
#include "cwrev/properties.hpp"
#include "cwrev/variational.hpp"
#include "oracle.hpp"

using namespace cwrev;

namespace {

PiecewiseTrigProfile example_k2() {
  const std::vector<double> c{0.7, 0.2};
  return PiecewiseTrigProfile::from_cosines(c);
}

double central_difference(const PiecewiseTrigProfile& p, std::size_t middle, double eps) {
  return (F_closed_piecewise(perturb_middle(p, middle, eps)) -
          F_closed_piecewise(perturb_middle(p, middle, -eps))) /
         (2 * eps);
}

}  // namespace

TEST(Triple, ParametersOfExample) {
  const Triple t = triple_at(example_k2(), 0);
  EXPECT_EQ(t.t0, 0.0);
  EXPECT_NEAR(t.t1, std::acos(0.7), 1e-15);
  EXPECT_NEAR(t.t2, std::acos(0.2), 1e-15);
  EXPECT_NEAR(t.t3, kHalfPi, 1e-15);
  EXPECT_EQ(t.sign, 1);
  EXPECT_NEAR(t.params.x, 1.0, 1e-14);
  EXPECT_NEAR(t.params.y, 0.4, 1e-14);
  EXPECT_NEAR(t.params.z, 0.0, 1e-14);
  EXPECT_THROW(triple_at(example_k2(), 1), InfeasibleError);
  EXPECT_THROW(triple_at(oracle::reuleaux(), 0), InfeasibleError);
}

TEST(Triple, CosinesFromParameters) {
  std::mt19937_64 rng(41);
  for (std::size_t k = 2; k <= 6; ++k) {
    const PiecewiseTrigProfile p = random_piecewise_profile(rng, k);
    for (std::size_t m = 0; m + 1 < k; ++m) {
      const Triple t = triple_at(p, m);
      EXPECT_NEAR(std::cos(t.t1), (t.params.x + t.params.y) / 2, 1e-12);
      EXPECT_NEAR(std::cos(t.t2), (t.params.y + t.params.z) / 2, 1e-12);
    }
  }
}

TEST(Merge, ExampleLandsOnReuleaux) {
  const PiecewiseTrigProfile p = example_k2();
  const PiecewiseTrigProfile merged = merge_triple(p, 0);
  ASSERT_EQ(merged.breakpoint_count(), 1u);
  EXPECT_NEAR(merged.breakpoints()[0], kPi / 3, 1e-14);
  EXPECT_NEAR(F_closed_piecewise(p), 1 - kPi / 3 - oracle::kMergeExampleDeltaF, 1e-12);
  EXPECT_NEAR(F_closed_piecewise(merged) - F_closed_piecewise(p), oracle::kMergeExampleDeltaF, 1e-12);
  EXPECT_NEAR(delta_F_merge(triple_at(p, 0).params), oracle::kMergeExampleDeltaF, 1e-12);
}

TEST(Merge, EveryK2ConfigurationMergesToReuleaux) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    const PiecewiseTrigProfile p = random_piecewise_profile(rng, 2);
    const PiecewiseTrigProfile merged = merge_triple(p, 0);
    ASSERT_EQ(merged.breakpoint_count(), 1u);
    EXPECT_NEAR(merged.breakpoints()[0], kPi / 3, 1e-12);
    EXPECT_NEAR(F_closed_piecewise(merged), 1 - kPi / 3, 1e-12);
  }
}

TEST(Merge, FormulaAndShapeOnHigherFamilies) {
  std::mt19937_64 rng(43);
  int merged_count = 0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t k = 3 + i % 4;
    const PiecewiseTrigProfile p = random_piecewise_profile(rng, k);
    for (std::size_t m = 0; m + 1 < k; ++m) {
      const Triple t = triple_at(p, m);
      PiecewiseTrigProfile merged = p;
      try {
        merged = merge_triple(p, m);
      } catch (const InfeasibleError&) {
        continue;
      }
      ++merged_count;
      EXPECT_EQ(merged.breakpoint_count(), k - 1);
      EXPECT_TRUE(validate(merged).ok()) << validate(merged).summary();
      const double diff = F_closed_piecewise(merged) - F_closed_piecewise(p);
      EXPECT_NEAR(delta_F_merge(t.params), diff, 1e-10);
      if (t.params.z < t.params.y && t.params.y < t.params.x) EXPECT_LT(diff, 0.0);
      // Unchanged before t0; opposite (modulo a sin t term) after t3.
      for (double u : {0.25, 0.5, 0.75}) {
        const double before = u * t.t0;
        EXPECT_NEAR(merged.eval_fundamental(before).h, p.eval_fundamental(before).h, 1e-12);
        const double after = t.t3 + u * (kHalfPi - t.t3);
        const Jet a = merged.eval_fundamental(after), b = p.eval_fundamental(after);
        // g = h cos t - h' sin t vanishes exactly on multiples of sin t.
        const double g = (a.h + b.h) * std::cos(after) - (a.dh + b.dh) * std::sin(after);
        EXPECT_NEAR(g, 0.0, 1e-12);
      }
    }
  }
  EXPECT_GT(merged_count, 100);
}

TEST(Merge, DeltaFormulaDomain) {
  EXPECT_NEAR(delta_F_merge({0.5, 0.5, 0.5}), 0.0, 1e-15);
  EXPECT_THROW(delta_F_merge({1.5, 1.5, 0.0}), DomainError);
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  int tested = 0;
  while (tested < 10000) {
    double x = u(rng), y = u(rng), z = u(rng);
    if (!(z < y && y < x && x + y < 2)) continue;
    ++tested;
    ASSERT_LT(delta_F_merge({x, y, z}), 0.0) << x << ' ' << y << ' ' << z;
  }
}

TEST(Derivative, FrozenValues) {
  EXPECT_NEAR(dF_deps({0.5, 0.6, 0.2}), oracle::kDerivAt_05_06_02, 1e-12);
  EXPECT_NEAR(dF_deps({0.9, 0.3, 0.4}), oracle::kDerivAt_09_03_04, 1e-12);
  EXPECT_NEAR(dF_deps({0.9, 1.0, 0.2}), -0.269863, 1e-6);
  EXPECT_NEAR(dF_deps({1.0, 0.2, 0.3}), 0.057539, 1e-6);
  EXPECT_THROW(dF_deps({1.0, 1.0, 0.2}), DomainError);
}

TEST(Derivative, RealizedTripleMatchesParameters) {
  const PiecewiseTrigProfile p = oracle::realize_triple(0.5, 0.6, 0.2);
  EXPECT_LT(std::abs(p.closure_residual()), 1e-15);
  const Triple t = triple_at(p, 1);
  EXPECT_NEAR(t.params.x, 0.5, 1e-14);
  EXPECT_NEAR(t.params.y, 0.6, 1e-14);
  EXPECT_NEAR(t.params.z, 0.2, 1e-14);
}

TEST(Derivative, CentralDifferencesConvergeQuadratically) {
  for (auto [x, y, z] : {std::tuple{0.5, 0.6, 0.2}, std::tuple{0.9, 0.3, 0.4}}) {
    const PiecewiseTrigProfile p = oracle::realize_triple(x, y, z);
    const double exact = dF_deps({x, y, z});
    const double e1 = std::abs(central_difference(p, 1, 1e-1) - exact);
    const double e2 = std::abs(central_difference(p, 1, 1e-2) - exact);
    EXPECT_LT(e2, 1e-5);
    EXPECT_GE(std::log10(e1 / e2), 1.9);
  }
}

TEST(Derivative, SignLaws) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  int neg = 0, pos = 0;
  while (neg < 10000 || pos < 10000) {
    const double x = u(rng), y = u(rng), z = u(rng);
    if (!(z < x && x + y < 2 && y + z < 2)) continue;
    if (x <= y && neg < 10000) {
      ++neg;
      ASSERT_LT(dF_deps({x, y, z}), 0.0);
    }
    if (y <= z && pos < 10000) {
      ++pos;
      ASSERT_GT(dF_deps({x, y, z}), 0.0);
    }
  }
}

TEST(Perturb, MovesOnlyTheMiddlePair) {
  const PiecewiseTrigProfile p = oracle::realize_triple(0.5, 0.6, 0.2);
  EXPECT_EQ(perturb_middle(p, 1, 0.0), p);
  const PiecewiseTrigProfile q = perturb_middle(p, 1, 0.02);
  EXPECT_EQ(q.breakpoints()[0], p.breakpoints()[0]);
  EXPECT_EQ(q.breakpoints()[3], p.breakpoints()[3]);
  EXPECT_NEAR(std::cos(q.breakpoints()[1]), std::cos(p.breakpoints()[1]) + 0.01, 1e-14);
  EXPECT_NEAR(std::cos(q.breakpoints()[2]), std::cos(p.breakpoints()[2]) + 0.01, 1e-14);
  EXPECT_LT(std::abs(q.closure_residual()), 1e-14);
  EXPECT_NEAR(triple_at(q, 1).params.y, 0.62, 1e-13);
  EXPECT_THROW(perturb_middle(p, 1, 1.0), InfeasibleError);
}

TEST(Closure, ProjectionAndSampling) {
  const auto projected = project_cosines_to_closure({0.9, 0.5, 0.2});
  ASSERT_TRUE(projected);
  EXPECT_NEAR((*projected)[0] - (*projected)[1] + (*projected)[2], 0.5, 1e-15);
  EXPECT_FALSE(project_cosines_to_closure({0.9, 0.85}));
  std::mt19937_64 rng(46);
  EXPECT_THROW(sample_feasible_cosines(0, rng), InfeasibleError);
  for (std::size_t k = 1; k <= 9; ++k) {
    const auto c = sample_feasible_cosines(k, rng);
    ASSERT_EQ(c.size(), k);
    double alt = 0;
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_GT(c[i], 0.0);
      EXPECT_LT(c[i], 1.0);
      if (i) EXPECT_LT(c[i], c[i - 1]);
      alt += (i % 2 ? -1 : 1) * c[i];
    }
    EXPECT_NEAR(alt, 0.5, 1e-12);
  }
}

TEST(Collapse, DropsCollidingBreakpoints) {
  // tau_1 at the origin: dropping it flips the leading sign.
  const PiecewiseTrigProfile p({1e-8, std::acos(0.8), std::acos(0.3)}, 1);
  const PiecewiseTrigProfile c = collapse_collisions(p, 1e-6);
  ASSERT_EQ(c.breakpoint_count(), 2u);
  EXPECT_EQ(c.leading_sign(), -1);
  EXPECT_LT(std::abs(c.closure_residual()), 1e-12);

  // Two breakpoints colliding in the interior vanish together.
  const std::vector<double> cos3{0.8, 0.3 + 1e-9, 0.3};
  const auto proj = project_cosines_to_closure(cos3);
  ASSERT_TRUE(proj);
  const PiecewiseTrigProfile q = PiecewiseTrigProfile::from_cosines(*proj);
  const PiecewiseTrigProfile r = collapse_collisions(q, 1e-6);
  ASSERT_EQ(r.breakpoint_count(), 1u);
  EXPECT_EQ(r.leading_sign(), 1);
  EXPECT_NEAR(r.breakpoints()[0], kPi / 3, 1e-12);

  EXPECT_EQ(collapse_collisions(oracle::reuleaux(), 1e-6), oracle::reuleaux());
  EXPECT_NEAR(min_breakpoint_gap(oracle::reuleaux()), kPi / 6, 1e-15);
}

TEST(Minimize, SingleBreakpointIsReuleaux) {
  SearchOptions opts;
  opts.k = 1;
  opts.seeds = 5;
  opts.rng_seed = 1;
  const SearchResult r = minimize(opts);
  ASSERT_EQ(r.best.breakpoint_count(), 1u);
  EXPECT_NEAR(r.best.breakpoints()[0], kPi / 3, 1e-10);
  EXPECT_NEAR(r.best_F, 1 - kPi / 3, 1e-12);
  EXPECT_TRUE(r.converged);
}

TEST(Minimize, HigherFamiliesStayAboveBound) {
  for (std::size_t k = 2; k <= 4; ++k) {
    for (int sign : {1, -1}) {
      SearchOptions opts;
      opts.k = k;
      opts.seeds = 10;
      opts.rng_seed = 100 + k;
      opts.leading_sign = sign;
      const SearchResult r = minimize(opts);
      EXPECT_GE(r.best_F, 1 - kPi / 3 - 1e-9);
      EXPECT_FALSE(r.trace.empty());
      for (const auto& e : r.trace) {
        EXPECT_GE(e.F, 1 - kPi / 3 - 1e-9);
        if (e.interior && e.breakpoints.size() >= 2) EXPECT_GT(e.F - (1 - kPi / 3), 0.0);
      }
    }
  }
  SearchOptions bad;
  bad.k = 0;
  EXPECT_THROW(minimize(bad), InfeasibleError);
}

TEST(Minimize, Deterministic) {
  SearchOptions opts;
  opts.k = 3;
  opts.seeds = 4;
  opts.rng_seed = 77;
  const SearchResult a = minimize(opts), b = minimize(opts);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.best_F, b.best_F);
  EXPECT_EQ(a.trace.size(), b.trace.size());
}
