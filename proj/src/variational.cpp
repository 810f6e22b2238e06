#include "cwrev/variational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "cwrev/errors.hpp"
#include "cwrev/functionals.hpp"

namespace cwrev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe_triple(const Triple& t) {
  std::ostringstream os;
  os.precision(12);
  os << "(t0, t3) = (" << t.t0 << ", " << t.t3 << ")";
  return os.str();
}

}  // namespace

Triple triple_at(const PiecewiseTrigProfile& profile, std::size_t middle) {
  const auto taus = profile.breakpoints();
  const std::size_t k = taus.size();
  if (middle + 1 >= k) {
    throw InfeasibleError("no three successive discontinuities around breakpoint " +
                          std::to_string(middle) + " of a profile with " + std::to_string(k) +
                          " breakpoints");
  }
  Triple tr;
  tr.t0 = middle == 0 ? 0.0 : taus[middle - 1];
  tr.t1 = taus[middle];
  tr.t2 = taus[middle + 1];
  tr.t3 = middle + 2 < k ? taus[middle + 2] : kHalfPi;
  const auto pieces = profile.pieces();
  const double s = pieces[middle].sign;
  tr.sign = static_cast<int>(s);
  tr.params = {-s * pieces[middle].a, s * pieces[middle + 1].a, -s * pieces[middle + 2].a};
  return tr;
}

PiecewiseTrigProfile merge_triple(const PiecewiseTrigProfile& profile, std::size_t middle) {
  const Triple tr = triple_at(profile, middle);
  const double c = 0.5 * (tr.params.x + tr.params.z);
  if (!(c < std::cos(tr.t0) && c > std::cos(tr.t3))) {
    std::ostringstream os;
    os.precision(12);
    os << "infeasible merge: cos t* = " << c << " does not place t* inside "
       << describe_triple(tr);
    throw InfeasibleError(os.str());
  }
  const auto taus = profile.breakpoints();
  std::vector<double> merged(taus.begin(), taus.begin() + static_cast<std::ptrdiff_t>(middle));
  merged.push_back(std::acos(c));
  merged.insert(merged.end(), taus.begin() + static_cast<std::ptrdiff_t>(middle + 2), taus.end());
  // Keeping the leading sign reproduces h on [0, t0]; the recursion then
  // gives A = -s x on [t0, t*] and A = s z on [t*, t3].
  return PiecewiseTrigProfile(std::move(merged), profile.leading_sign(),
                              profile.vertical_offset());
}

double delta_F_merge(const TripleParams& p) {
  const double xz = 0.5 * (p.x + p.z);
  const double xy = 0.5 * (p.x + p.y);
  const double yz = 0.5 * (p.y + p.z);
  for (double arg : {xz, xy, yz}) {
    if (!(arg >= -1.0 && arg <= 1.0)) throw DomainError("delta_F_merge: acos argument outside [-1, 1]");
  }
  return (p.z - p.x) * std::acos(xz) + (p.x - p.y) * std::acos(xy) + (p.y - p.z) * std::acos(yz);
}

double dF_deps(const TripleParams& p) {
  const double xy = p.x + p.y;
  const double yz = p.y + p.z;
  if (!(std::abs(xy) < 2.0) || !(std::abs(yz) < 2.0)) {
    throw DomainError("dF_deps requires |x + y| < 2 and |y + z| < 2");
  }
  return std::acos(0.5 * xy) - std::acos(0.5 * yz) + (p.x - p.y) / std::sqrt(4 - xy * xy) +
         (p.y - p.z) / std::sqrt(4 - yz * yz);
}

PiecewiseTrigProfile perturb_middle(const PiecewiseTrigProfile& profile, std::size_t middle,
                                    double eps) {
  const Triple tr = triple_at(profile, middle);
  if (eps == 0.0) return profile;
  // In the normalized frame cos t1 = (x + y) / 2 and cos t2 = (y + z) / 2.
  const double c1 = std::cos(tr.t1) + 0.5 * eps;
  const double c2 = std::cos(tr.t2) + 0.5 * eps;
  const double t1 = c1 >= -1.0 && c1 <= 1.0 ? std::acos(c1) : std::nan("");
  const double t2 = c2 >= -1.0 && c2 <= 1.0 ? std::acos(c2) : std::nan("");
  if (!(tr.t0 < t1 && t1 < t2 && t2 < tr.t3)) {
    std::ostringstream os;
    os.precision(12);
    os << "infeasible perturbation: eps = " << eps << " moves the middle breakpoints outside "
       << describe_triple(tr) << " or out of order";
    throw InfeasibleError(os.str());
  }
  std::vector<double> taus(profile.breakpoints().begin(), profile.breakpoints().end());
  taus[middle] = t1;
  taus[middle + 1] = t2;
  return PiecewiseTrigProfile(std::move(taus), profile.leading_sign(), profile.vertical_offset());
}

std::optional<std::vector<double>> project_cosines_to_closure(std::vector<double> cosines) {
  double alternating = 0;
  for (std::size_t i = 0; i < cosines.size(); ++i) alternating += (i % 2 ? -1.0 : 1.0) * cosines[i];
  if (!(alternating > 0)) return std::nullopt;
  const double scale = 0.5 / alternating;
  for (double& c : cosines) c *= scale;
  if (!(cosines.front() < 1.0)) return std::nullopt;
  return cosines;
}

std::vector<double> sample_feasible_cosines(std::size_t k, std::mt19937_64& rng) {
  if (k == 0) throw InfeasibleError("no profile without interior breakpoints satisfies h'(pi/2) = 0");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<double> c(k);
    for (double& v : c) v = unit(rng);
    std::sort(c.begin(), c.end(), std::greater<>());
    if (std::adjacent_find(c.begin(), c.end()) != c.end() || c.back() <= 0.0) continue;
    if (auto projected = project_cosines_to_closure(std::move(c))) return *projected;
  }
  throw InfeasibleError("could not sample a feasible breakpoint configuration");
}

double min_breakpoint_gap(const PiecewiseTrigProfile& profile) {
  const auto taus = profile.breakpoints();
  if (taus.empty()) return kHalfPi;
  double gap = std::min(taus.front(), kHalfPi - taus.back());
  for (std::size_t i = 1; i < taus.size(); ++i) gap = std::min(gap, taus[i] - taus[i - 1]);
  return gap;
}

PiecewiseTrigProfile collapse_collisions(const PiecewiseTrigProfile& profile, double threshold) {
  std::vector<double> taus(profile.breakpoints().begin(), profile.breakpoints().end());
  int sign = profile.leading_sign();
  bool changed = false;
  for (bool again = true; again && !taus.empty();) {
    again = false;
    if (taus.front() < threshold) {
      // The first piece vanishes; h + h'' starts with the next sign.
      taus.erase(taus.begin());
      sign = -sign;
      again = changed = true;
    } else if (kHalfPi - taus.back() < threshold) {
      taus.pop_back();
      again = changed = true;
    } else {
      for (std::size_t i = 0; i + 1 < taus.size(); ++i) {
        if (taus[i + 1] - taus[i] < threshold) {
          taus.erase(taus.begin() + static_cast<std::ptrdiff_t>(i),
                     taus.begin() + static_cast<std::ptrdiff_t>(i + 2));
          again = changed = true;
          break;
        }
      }
    }
  }
  if (!changed) return profile;
  if (taus.empty()) throw InfeasibleError("collapse removed every breakpoint");
  std::vector<double> cosines(taus.size());
  std::transform(taus.begin(), taus.end(), cosines.begin(), [](double t) { return std::cos(t); });
  if (auto projected = project_cosines_to_closure(cosines)) {
    return PiecewiseTrigProfile::from_cosines(*projected, sign, profile.vertical_offset());
  }
  // Rescaling pushed the first cosine to 1; absorb the residual in one cosine instead.
  double alternating = 0;
  for (std::size_t i = 0; i < cosines.size(); ++i) alternating += (i % 2 ? -1.0 : 1.0) * cosines[i];
  for (std::size_t j = cosines.size(); j-- > 0;) {
    std::vector<double> c = cosines;
    c[j] += (j % 2 ? -1.0 : 1.0) * (0.5 - alternating);
    const bool inside = c[j] > 0.0 && c[j] < 1.0 && (j == 0 || c[j] < c[j - 1]) &&
                        (j + 1 == c.size() || c[j] > c[j + 1]);
    if (inside) return PiecewiseTrigProfile::from_cosines(c, sign, profile.vertical_offset());
  }
  throw InfeasibleError("collapsed configuration cannot be projected onto closure");
}

namespace {

// Free variables are tau_1..tau_{k-1}; tau_k follows from the closure constraint.
std::optional<PiecewiseTrigProfile> complete_configuration(std::span<const double> free,
                                                           int sign) {
  double partial = 0;
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (!(free[i] > (i ? free[i - 1] : 0.0)) || !(free[i] < kHalfPi)) return std::nullopt;
    partial += (i % 2 ? -1.0 : 1.0) * std::cos(free[i]);
  }
  const double last_sign = free.size() % 2 ? -1.0 : 1.0;
  const double c_last = last_sign * (0.5 - partial);
  if (!(c_last > 0.0 && c_last < 1.0)) return std::nullopt;
  const double t_last = std::acos(c_last);
  if (!free.empty() && !(t_last > free.back())) return std::nullopt;
  std::vector<double> taus(free.begin(), free.end());
  taus.push_back(t_last);
  return PiecewiseTrigProfile(std::move(taus), sign);
}

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

class StratumSearch {
 public:
  StratumSearch(int sign, double threshold, int max_iterations)
      : sign_(sign), threshold_(threshold), max_iterations_(max_iterations) {}

  double objective(std::span<const double> free) const {
    const auto prof = complete_configuration(free, sign_);
    return prof ? F_closed_piecewise(*prof) : kInf;
  }

  bool collided(std::span<const double> free) const {
    const auto prof = complete_configuration(free, sign_);
    return prof && min_breakpoint_gap(*prof) < threshold_;
  }

  // Returns the best point reached; sets `hit_collision` when the run stopped at a collision.
  std::vector<double> run(std::vector<double> start, bool& hit_collision, bool& converged) {
    const std::size_t n = start.size();
    Simplex sx;
    sx.points.push_back(start);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> p = start;
      double step = 0.05;
      for (int tries = 0; tries < 60; ++tries, step *= 0.5) {
        p[i] = start[i] + ((tries % 2) ? -step : step);
        if (objective(p) < kInf) break;
      }
      sx.points.push_back(p);
    }
    for (const auto& p : sx.points) sx.values.push_back(objective(p));

    hit_collision = false;
    converged = false;
    std::vector<std::size_t> order(n + 1);
    for (int iter = 0; iter < max_iterations_; ++iter) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return sx.values[a] < sx.values[b]; });
      const auto& best = sx.points[order.front()];
      if (collided(best)) {
        hit_collision = true;
        return best;
      }
      double diameter = 0;
      for (const auto& p : sx.points) {
        for (std::size_t d = 0; d < n; ++d) diameter = std::max(diameter, std::abs(p[d] - best[d]));
      }
      if (diameter < 1e-13) {
        converged = true;
        return best;
      }
      step(sx, order);
    }
    const auto it = std::min_element(sx.values.begin(), sx.values.end());
    return sx.points[static_cast<std::size_t>(it - sx.values.begin())];
  }

 private:
  void step(Simplex& sx, const std::vector<std::size_t>& order) const {
    const std::size_t n = sx.points.size() - 1;
    const std::size_t worst = order.back();
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < n; ++d) centroid[d] += sx.points[order[i]][d] / n;
    }
    auto along = [&](double coef) {
      std::vector<double> p(n);
      for (std::size_t d = 0; d < n; ++d) {
        p[d] = centroid[d] + coef * (sx.points[worst][d] - centroid[d]);
      }
      return p;
    };
    const double f_best = sx.values[order.front()];
    const double f_second_worst = sx.values[order[n - 1]];
    const double f_worst = sx.values[worst];

    auto reflected = along(-1.0);
    const double f_r = objective(reflected);
    if (f_r < f_best) {
      auto expanded = along(-2.0);
      const double f_e = objective(expanded);
      if (f_e < f_r) {
        sx.points[worst] = std::move(expanded);
        sx.values[worst] = f_e;
      } else {
        sx.points[worst] = std::move(reflected);
        sx.values[worst] = f_r;
      }
      return;
    }
    if (f_r < f_second_worst) {
      sx.points[worst] = std::move(reflected);
      sx.values[worst] = f_r;
      return;
    }
    auto contracted = f_r < f_worst ? along(-0.5) : along(0.5);
    const double f_c = objective(contracted);
    if (f_c < std::min(f_r, f_worst)) {
      sx.points[worst] = std::move(contracted);
      sx.values[worst] = f_c;
      return;
    }
    // Shrink toward the best vertex.
    const auto& best = sx.points[order.front()];
    for (std::size_t i = 1; i <= n; ++i) {
      auto& p = sx.points[order[i]];
      for (std::size_t d = 0; d < n; ++d) p[d] = best[d] + 0.5 * (p[d] - best[d]);
      sx.values[order[i]] = objective(p);
    }
  }

  int sign_;
  double threshold_;
  int max_iterations_;
};

TraceEntry make_entry(const PiecewiseTrigProfile& p, double threshold) {
  return {{p.breakpoints().begin(), p.breakpoints().end()}, p.leading_sign(),
          F_closed_piecewise(p), min_breakpoint_gap(p) >= threshold};
}

}  // namespace

SearchResult minimize(const SearchOptions& options) {
  if (options.k == 0) {
    throw InfeasibleError("no feasible configuration with k = 0: h'(pi/2) = 0 fails");
  }
  std::mt19937_64 rng(options.rng_seed);
  const double reuleaux_cos = 0.5;
  SearchResult result{PiecewiseTrigProfile::from_cosines(std::span(&reuleaux_cos, 1),
                                                         options.leading_sign),
                      kInf, {}, true};
  auto record = [&](const PiecewiseTrigProfile& p) {
    TraceEntry e = make_entry(p, options.collision_threshold);
    if (e.F < result.best_F) {
      result.best_F = e.F;
      result.best = p;
    }
    result.trace.push_back(std::move(e));
  };

  const std::size_t seeds = std::max<std::size_t>(options.seeds, 1);
  for (std::size_t seed = 0; seed < seeds; ++seed) {
    const auto cosines = sample_feasible_cosines(options.k, rng);
    PiecewiseTrigProfile current = PiecewiseTrigProfile::from_cosines(cosines, options.leading_sign);
    record(current);
    // k = 1 admits the single point tau = pi/3; otherwise descend stratum by stratum.
    while (current.breakpoint_count() >= 2) {
      const auto taus = current.breakpoints();
      std::vector<double> free(taus.begin(), taus.end() - 1);
      StratumSearch search(current.leading_sign(), options.collision_threshold,
                           options.max_iterations);
      bool hit = false, converged = false;
      std::vector<double> reached = search.run(free, hit, converged);
      // A converged interior run gets restarted once from its end point.
      if (!hit && converged) reached = search.run(reached, hit, converged);
      auto prof = complete_configuration(reached, current.leading_sign());
      if (!prof) break;
      record(*prof);
      if (!hit) {
        result.converged = result.converged && converged;
        break;
      }
      current = collapse_collisions(*prof, options.collision_threshold);
      record(current);
    }
  }
  return result;
}

}  // namespace cwrev
