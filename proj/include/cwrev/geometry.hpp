#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cwrev/profile.hpp"

namespace cwrev {

/// Tolerance below which a negative radius of curvature counts as a convexity violation.
inline constexpr double kConvexityTol = 1e-9;

using Vec3 = std::array<double, 3>;

struct Point2 {
  double x = 0;
  double y = 0;
};

/// Everything known about the generating curve at normal angle t.
struct ProfileSample {
  double t = 0;
  double h = 0;
  double dh = 0;
  double d2h = 0;
  double s = 0;  // support value h + w
  double x = 0;
  double y = 0;
  double rho = 0;  // radius of curvature s'' + s
};

ProfileSample sample(const Body& body, double t);

/// Point of the generating curve whose outward normal is (cos t, sin t):
/// gamma = s e^{it} + s' i e^{it}.
Point2 curve_point(const Body& body, double t);

/// s'' + s = h'' + h + w. Zero on a vertex, 2w on an arc of the rolling circle.
double radius_of_curvature(const Body& body, double t);

/// Smallest radius of curvature of h + w over a uniform grid of the circle.
/// Takes a raw pair so that half-widths below w0 can be probed.
double min_radius_of_curvature(const Profile& profile, double half_width, int samples = 4096);

/// s(t) + s(t + pi); equals 2w for every admissible body.
double width_at(const Body& body, double t);

/// (x(t) cos theta, x(t) sin theta, y(t)).
Vec3 surface_point(const Body& body, double t, double theta);

/// Closed triangulated surface; triangles are counter-clockwise seen from outside.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
};

/// Mesh of the boundary: nt + 1 latitude rings at t_j = -pi/2 + pi j / (nt + 2),
/// ntheta vertices per ring, and one vertex per pole. The nt bands between
/// rings give 2 nt ntheta triangles and the two pole fans add 2 ntheta, so
/// V = (nt + 1) ntheta + 2 and F = 2 (nt + 1) ntheta.
///
/// Rings that fall on a vertex of the generating curve coincide
/// geometrically; connectivity is unaffected.
Mesh tessellate(const Body& body, int nt, int ntheta);

/// (1/6) sum of v0 . (v1 x v2) over all triangles.
double mesh_signed_volume(const Mesh& mesh);

struct MeshTopology {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t face_count = 0;
  bool watertight = false;           // every undirected edge used by exactly two faces
  bool consistently_oriented = false;  // every directed edge used once
  long euler_characteristic() const noexcept {
    return static_cast<long>(vertex_count) - static_cast<long>(edge_count) +
           static_cast<long>(face_count);
  }
};

MeshTopology mesh_topology(const Mesh& mesh);

/// 2 pi times the integral over t in [-pi/2, pi/2] of x(t) rho(t).
double surface_area(const Body& body);

}  // namespace cwrev
