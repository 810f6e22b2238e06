#include "cwrev/properties.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "cwrev/functionals.hpp"
#include "cwrev/geometry.hpp"
#include "cwrev/variational.hpp"

namespace cwrev {

namespace {

using Clock = std::chrono::steady_clock;

// Accumulates one named check.
class Tally {
 public:
  explicit Tally(std::string id) : start_(Clock::now()) { out_.id = std::move(id); }

  void sample() { ++out_.samples; }

  // `residual` is the quantity compared against the tolerance; larger is worse.
  void check(bool ok, double residual) {
    out_.worst_residual = seen_ ? std::max(out_.worst_residual, residual) : residual;
    seen_ = true;
    if (!ok) ++out_.violations;
  }

  PropertyOutcome finish() {
    out_.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return out_;
  }

 private:
  PropertyOutcome out_;
  Clock::time_point start_;
  bool seen_ = false;
};

PropertyOutcome bundle(std::string id, std::vector<PropertyOutcome> parts) {
  PropertyOutcome out;
  out.id = std::move(id);
  out.worst_residual = -std::numeric_limits<double>::infinity();
  for (const auto& p : parts) {
    out.samples += p.samples;
    out.violations += p.violations;
    out.elapsed_seconds += p.elapsed_seconds;
    out.worst_residual = std::max(out.worst_residual, p.worst_residual);
  }
  out.parts = std::move(parts);
  return out;
}

std::vector<double> combine(std::span<const double> a, std::span<const double> b, double eps) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += eps * b[i];
  return out;
}

}  // namespace

SineSeriesProfile random_sine_profile(std::mt19937_64& rng, std::size_t max_terms) {
  max_terms = std::max<std::size_t>(max_terms, 2);
  std::uniform_int_distribution<std::size_t> terms(2, max_terms);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> c(terms(rng));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = unit(rng) * std::ldexp(1.0, -static_cast<int>(k));
  return SineSeriesProfile(std::move(c));
}

PiecewiseTrigProfile random_piecewise_profile(std::mt19937_64& rng, std::size_t k) {
  const auto cosines = sample_feasible_cosines(k, rng);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> offset(-1.0, 1.0);
  return PiecewiseTrigProfile::from_cosines(cosines, coin(rng) ? 1 : -1, offset(rng));
}

PropertyOutcome run_wirtinger(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tally inequality("wirtinger.nonpositive");
  Tally equality("wirtinger.first_harmonic_zero");
  Tally strict("wirtinger.higher_harmonic_negative");
  for (std::size_t i = 0; i < samples; ++i) {
    const SineSeriesProfile h = random_sine_profile(rng);
    const double f = F_quadrature(h);
    inequality.sample();
    inequality.check(f <= 1e-12, f);

    const auto c = h.coefficients();
    const double f_ball = F_quadrature(make_ball(c[0]));
    equality.sample();
    equality.check(std::abs(f_ball) < 1e-12, std::abs(f_ball));

    // Force one higher harmonic to size >= 1e-3 and keep the rest.
    std::vector<double> forced(c.begin(), c.end());
    std::uniform_int_distribution<std::size_t> pick(1, forced.size() - 1);
    double& ck = forced[pick(rng)];
    ck = std::copysign(std::max(std::abs(ck), 1e-3), ck == 0.0 ? 1.0 : ck);
    const double f_forced = F_quadrature(SineSeriesProfile(std::move(forced)));
    strict.sample();
    strict.check(f_forced <= -1e-9, f_forced);
  }
  return bundle("wirtinger", {inequality.finish(), equality.finish(), strict.finish()});
}

PropertyOutcome run_bijection_checks(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_int_distribution<std::size_t> kdist(1, 5);
  Tally width("bijection.constant_width");
  Tally convex("bijection.convexity");
  Tally poles("bijection.pole_closure");
  Tally sharp("bijection.w0_sharpness");
  Tally vertex("bijection.vertex_at_w0");
  Tally ball("bijection.ball_radius");

  for (std::size_t i = 0; i < samples; ++i) {
    const bool piecewise = i % 2 == 1;
    const Profile profile = piecewise ? Profile(random_piecewise_profile(rng, kdist(rng)))
                                      : Profile(random_sine_profile(rng));
    const double w0v = w0(profile);
    for (double extra : {0.0, 0.1, 1.0}) {
      const double w = w0v + extra;
      if (w <= 0.0) continue;
      const Body body(profile, w);
      width.sample();
      double worst_width = 0;
      for (int d = 0; d < 64; ++d) {
        worst_width = std::max(worst_width, std::abs(width_at(body, angle(rng)) - 2 * w));
      }
      width.check(worst_width < 1e-10, worst_width);

      const double rho_min = min_radius_of_curvature(profile, w, 1024);
      convex.sample();
      convex.check(rho_min >= -kConvexityTol, -rho_min);

      const double pole = std::max(std::abs(curve_point(body, kHalfPi).x),
                                   std::abs(curve_point(body, -kHalfPi).x));
      poles.sample();
      poles.check(pole <= 1e-9, pole);

      if (piecewise && extra == 0.0) {
        vertex.sample();
        vertex.check(std::abs(rho_min) <= 1e-9, std::abs(rho_min));
      }
    }
    const double below = min_radius_of_curvature(profile, w0v - 0.05, 4096);
    sharp.sample();
    sharp.check(below < 0.0, below);
  }

  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (std::size_t i = 0; i < std::max<std::size_t>(samples / 10, 1); ++i) {
    const double w = 0.5 + std::abs(coef(rng));
    const Body body(make_ball(coef(rng)), w);
    double worst = 0;
    for (int d = 0; d < 16; ++d) worst = std::max(worst, std::abs(radius_of_curvature(body, angle(rng)) - w));
    ball.sample();
    ball.check(worst < 1e-12, worst);
  }
  return bundle("bijection", {width.finish(), convex.finish(), poles.finish(), sharp.finish(),
                              vertex.finish(), ball.finish()});
}

PropertyOutcome run_variational_checks(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PropertyOutcome> parts;

  {
    Tally t("variational.ratio_increasing_in_w");
    for (std::size_t i = 0; i < samples; ++i) {
      const SineSeriesProfile h = random_sine_profile(rng);
      const double base = h.critical_half_width();
      double previous = -std::numeric_limits<double>::infinity();
      double worst = -std::numeric_limits<double>::infinity();
      bool ok = true;
      for (double extra : {0.0, 0.25, 0.5, 1.0, 2.0}) {
        const double r = ratio(Body(h, base + extra));
        worst = std::max(worst, previous - r);
        ok = ok && r > previous;
        previous = r;
      }
      t.sample();
      t.check(ok, worst);
    }
    parts.push_back(t.finish());
  }

  {
    Tally t("variational.quadratic_expansion");
    for (std::size_t i = 0; i < samples; ++i) {
      const SineSeriesProfile h = random_sine_profile(rng);
      const SineSeriesProfile v = random_sine_profile(rng);
      const double fh = F_quadrature(h);
      const double fv = F_quadrature(v);
      const double b = F_bilinear(h, v);
      for (double eps : {0.1, 0.01}) {
        const double f = F_quadrature(SineSeriesProfile(combine(h.coefficients(), v.coefficients(), eps)));
        const double residual = std::abs(f - fh - 2 * eps * b - eps * eps * fv);
        t.sample();
        t.check(residual < 1e-10, residual);
      }
    }
    parts.push_back(t.finish());
  }

  {
    Tally decrease("variational.merge_decreases_F");
    Tally formula("variational.merge_formula");
    for (std::size_t i = 0; i < 10 * samples; ++i) {
      const PiecewiseTrigProfile h = random_piecewise_profile(rng, 2);
      const PiecewiseTrigProfile merged = merge_triple(h, 0);
      const double diff = F_closed_piecewise(merged) - F_closed_piecewise(h);
      decrease.sample();
      decrease.check(diff < 0.0, diff);
      const double predicted = delta_F_merge(triple_at(h, 0).params);
      formula.sample();
      formula.check(std::abs(predicted - diff) < 1e-10, std::abs(predicted - diff));
    }
    parts.push_back(decrease.finish());
    parts.push_back(formula.finish());
  }

  {
    std::uniform_real_distribution<double> u(0.0, 2.0);
    auto draw = [&](auto&& accept) {
      for (;;) {
        const TripleParams p{u(rng), u(rng), u(rng)};
        if (p.z < p.x && p.x + p.y < 2 && p.y + p.z < 2 && accept(p)) return p;
      }
    };
    Tally negative("variational.dF_negative_when_x_le_y");
    Tally positive("variational.dF_positive_when_y_le_z");
    for (std::size_t i = 0; i < 10 * samples; ++i) {
      const double d1 = dF_deps(draw([](const TripleParams& p) { return p.x <= p.y; }));
      negative.sample();
      negative.check(d1 < 0.0, d1);
      const double d2 = dF_deps(draw([](const TripleParams& p) { return p.y <= p.z; }));
      positive.sample();
      positive.check(d2 > 0.0, -d2);
    }
    parts.push_back(negative.finish());
    parts.push_back(positive.finish());
  }

  {
    Tally t("variational.global_lower_bound");
    std::uniform_int_distribution<std::size_t> kdist(1, 5);
    for (std::size_t i = 0; i < 100 * samples; ++i) {
      const std::size_t k = kdist(rng);
      const double gap = F_closed_piecewise(random_piecewise_profile(rng, k)) - kReuleauxFunctional;
      const bool ok = gap >= -1e-9 && (k == 1 || gap > 0.0);
      t.sample();
      t.check(ok, -gap);
    }
    parts.push_back(t.finish());
  }

  return bundle("variational", std::move(parts));
}

}  // namespace cwrev
