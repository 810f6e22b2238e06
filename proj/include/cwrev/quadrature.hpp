#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cwrev::quad {

inline constexpr double kDefaultTolerance = 1e-10;

/// Adaptive Gauss-Kronrod (15 points, interval bisection) on [a, b].
template <class F>
double integrate(F&& f, double a, double b, double tolerance = kDefaultTolerance) {
  if (a == b) return 0.0;
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  return Rule::integrate(f, a, b, /*max_depth=*/20, tolerance);
}

/// Integrates over [a, b] split at the given interior points, so that an
/// integrand smooth on each sub-interval converges at the rule's full order.
template <class F>
double integrate_split(F&& f, double a, double b, std::span<const double> splits,
                       double tolerance = kDefaultTolerance) {
  std::vector<double> nodes{a};
  for (double s : splits) {
    if (s > a && s < b) nodes.push_back(s);
  }
  std::sort(nodes.begin() + 1, nodes.end());
  nodes.push_back(b);
  double total = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    total += integrate(f, nodes[i], nodes[i + 1], tolerance);
  }
  return total;
}

}  // namespace cwrev::quad
