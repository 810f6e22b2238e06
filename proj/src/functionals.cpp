#include "cwrev/functionals.hpp"

#include <cmath>
#include <sstream>

#include "cwrev/errors.hpp"
#include "cwrev/geometry.hpp"
#include "cwrev/quadrature.hpp"

namespace cwrev {

double F_quadrature(const Profile& profile) {
  const auto splits = profile.singular_points();
  auto integrand = [&profile](double t) {
    const Jet j = profile.eval(t);
    return (j.h * j.h - 0.5 * j.dh * j.dh) * std::cos(t);
  };
  return quad::integrate_split(integrand, 0.0, kHalfPi, splits);
}

double F_boundary_form(const Profile& profile) {
  const auto splits = profile.singular_points();
  auto integrand = [&profile](double t) {
    const Jet j = profile.eval(t);
    return (j.h + j.d2h) * (j.h * std::cos(t) - j.dh * std::sin(t));
  };
  return quad::integrate_split(integrand, 0.0, kHalfPi, splits);
}

double F_closed_piecewise(const PiecewiseTrigProfile& profile) {
  double total = 1.0;
  for (const TrigPiece& p : profile.pieces()) total += p.sign * p.a * (p.hi - p.lo);
  return total;
}

double F(const Profile& profile) {
  if (const auto* pw = profile.as_piecewise()) return F_closed_piecewise(*pw);
  return F_quadrature(profile);
}

double F_bilinear(const Profile& u, const Profile& v) {
  auto splits = u.singular_points();
  const auto more = v.singular_points();
  splits.insert(splits.end(), more.begin(), more.end());
  auto integrand = [&u, &v](double t) {
    const Jet ju = u.eval(t);
    const Jet jv = v.eval(t);
    return (ju.h * jv.h - 0.5 * ju.dh * jv.dh) * std::cos(t);
  };
  return quad::integrate_split(integrand, 0.0, kHalfPi, splits);
}

double volume(const Body& body) {
  const double w = body.half_width();
  return 4 * kPi * (w * w * w / 3 + w * F(body.profile()));
}

double ratio(const Body& body) {
  const double w = body.half_width();
  return 1 + 3 * F(body.profile()) / (w * w);
}

Body normal_flow(const Body& body, double tau) {
  const double max_tau = body.half_width() - body.critical_half_width();
  const double new_w = body.half_width() - tau;
  if (!(tau >= 0) || tau > max_tau + kFeasibilityTol || !(new_w > 0)) {
    std::ostringstream os;
    os.precision(12);
    os << "normal flow by tau = " << tau << " leaves the convex class; admissible tau lies in [0, "
       << max_tau << "]";
    throw ConvexityError(os.str(), max_tau);
  }
  return Body(body.profile(), new_w);
}

std::string_view to_string(FunctionalMethod method) {
  return method == FunctionalMethod::ExactPiecewise ? "exact-piecewise" : "quadrature";
}

FunctionalReport analyze(const Body& body) {
  FunctionalReport r;
  r.method = body.profile().is_piecewise() ? FunctionalMethod::ExactPiecewise
                                           : FunctionalMethod::Quadrature;
  r.F = F(body.profile());
  r.w0 = body.critical_half_width();
  r.half_width = body.half_width();
  const double w = r.half_width;
  r.volume = 4 * kPi * (w * w * w / 3 + w * r.F);
  r.ratio = 1 + 3 * r.F / (w * w);
  r.area = surface_area(body);
  return r;
}

}  // namespace cwrev
