#pragma once

#include <string_view>

#include "cwrev/profile.hpp"

namespace cwrev {

/// I of the rotated Reuleaux triangle, the minimum over bodies of revolution.
inline constexpr double kReuleauxRatio = 4.0 - std::numbers::pi;

/// F of the Reuleaux profile.
inline constexpr double kReuleauxFunctional = 1.0 - std::numbers::pi / 3.0;

/// Reported I of Meissner's tetrahedron. Reference only; nothing here computes it.
inline constexpr double kMeissnerRatio = 0.8019;

/// F(h) = integral over [0, pi/2] of (h^2 - h'^2 / 2) cos t, by adaptive
/// quadrature (split at breakpoints for piecewise profiles).
double F_quadrature(const Profile& profile);

/// The same functional written as the integral of (h + h'')(h cos t - h' sin t).
double F_boundary_form(const Profile& profile);

/// Closed form for piecewise profiles. On piece i the integrand of the
/// boundary form reduces to sigma_i A_i + cos t, so
/// F = sum_i sigma_i A_i (tau_{i+1} - tau_i) + 1.
double F_closed_piecewise(const PiecewiseTrigProfile& profile);

/// Closed form when available, quadrature otherwise.
double F(const Profile& profile);

/// Symmetric bilinear form with B(h, h) = F(h):
/// integral of (u v - u' v' / 2) cos t.
double F_bilinear(const Profile& u, const Profile& v);

/// V = 4 pi (w^3 / 3 + w F(h)).
double volume(const Body& body);

/// I = V / (4 pi w^3 / 3) = 1 + 3 F / w^2.
double ratio(const Body& body);

/// Flows the boundary inward by distance tau along its normals: h is fixed
/// and w decreases by tau. Throws ConvexityError when tau leaves
/// [0, w - w0(h)] (up to the feasibility tolerance).
Body normal_flow(const Body& body, double tau);

enum class FunctionalMethod { ExactPiecewise, Quadrature };

std::string_view to_string(FunctionalMethod method);

struct FunctionalReport {
  double F = 0;
  double w0 = 0;
  double half_width = 0;
  double volume = 0;
  double area = 0;
  double ratio = 0;
  FunctionalMethod method = FunctionalMethod::Quadrature;
};

FunctionalReport analyze(const Body& body);

}  // namespace cwrev
