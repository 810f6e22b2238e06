#include "cwrev/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "cwrev/errors.hpp"
#include "cwrev/quadrature.hpp"

namespace cwrev {

ProfileSample sample(const Body& body, double t) {
  const Jet j = body.profile().eval(t);
  const double w = body.half_width();
  ProfileSample p;
  p.t = t;
  p.h = j.h;
  p.dh = j.dh;
  p.d2h = j.d2h;
  p.s = j.h + w;
  const double c = std::cos(t);
  const double s = std::sin(t);
  p.x = p.s * c - j.dh * s;
  p.y = p.s * s + j.dh * c;
  p.rho = j.d2h + j.h + w;
  return p;
}

Point2 curve_point(const Body& body, double t) {
  const ProfileSample p = sample(body, t);
  return {p.x, p.y};
}

double radius_of_curvature(const Body& body, double t) {
  const Jet j = body.profile().eval(t);
  return j.d2h + j.h + body.half_width();
}

double min_radius_of_curvature(const Profile& profile, double half_width, int samples) {
  double lowest = std::numeric_limits<double>::infinity();
  // Both one-sided limits matter at breakpoints, so probe the breakpoints too.
  auto probe = [&](double t) {
    const Jet j = profile.eval(t);
    lowest = std::min(lowest, j.d2h + j.h + half_width);
  };
  for (int i = 0; i < samples; ++i) probe(-kPi + 2 * kPi * (i + 0.5) / samples);
  for (double tau : profile.singular_points()) {
    probe(tau);
    probe(-tau);
  }
  return lowest;
}

double width_at(const Body& body, double t) {
  const auto& prof = body.profile();
  return prof.eval(t).h + prof.eval(t + kPi).h + 2 * body.half_width();
}

Vec3 surface_point(const Body& body, double t, double theta) {
  const Point2 p = curve_point(body, t);
  return {p.x * std::cos(theta), p.x * std::sin(theta), p.y};
}

Mesh tessellate(const Body& body, int nt, int ntheta) {
  if (nt < 3 || ntheta < 3) throw DomainError("tessellate needs nt >= 3 and ntheta >= 3");
  const int rings = nt + 1;
  Mesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(rings) * ntheta + 2);
  mesh.triangles.reserve(2 * static_cast<std::size_t>(rings) * ntheta);

  std::vector<double> cos_theta(ntheta), sin_theta(ntheta);
  for (int i = 0; i < ntheta; ++i) {
    const double theta = 2 * kPi * i / ntheta;
    cos_theta[i] = std::cos(theta);
    sin_theta[i] = std::sin(theta);
  }

  const Point2 south = curve_point(body, -kHalfPi);
  mesh.vertices.push_back({0.0, 0.0, south.y});
  for (int j = 1; j <= rings; ++j) {
    const Point2 p = curve_point(body, -kHalfPi + kPi * j / (nt + 2));
    for (int i = 0; i < ntheta; ++i) {
      mesh.vertices.push_back({p.x * cos_theta[i], p.x * sin_theta[i], p.y});
    }
  }
  const Point2 north = curve_point(body, kHalfPi);
  mesh.vertices.push_back({0.0, 0.0, north.y});

  const auto south_id = 0u;
  const auto north_id = static_cast<std::uint32_t>(mesh.vertices.size() - 1);
  auto ring = [ntheta](int j, int i) {
    return static_cast<std::uint32_t>(1 + (j - 1) * ntheta + (i % ntheta));
  };

  // X_theta x X_t points outward, so (lower i, lower i+1, upper i+1) is counter-clockwise.
  for (int i = 0; i < ntheta; ++i) mesh.triangles.push_back({south_id, ring(1, i + 1), ring(1, i)});
  for (int j = 1; j < rings; ++j) {
    for (int i = 0; i < ntheta; ++i) {
      const auto a = ring(j, i), b = ring(j, i + 1), c = ring(j + 1, i + 1), d = ring(j + 1, i);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }
  for (int i = 0; i < ntheta; ++i) {
    mesh.triangles.push_back({ring(rings, i), ring(rings, i + 1), north_id});
  }
  return mesh;
}

double mesh_signed_volume(const Mesh& mesh) {
  double six_v = 0;
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    six_v += a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
             a[2] * (b[0] * c[1] - b[1] * c[0]);
  }
  return six_v / 6.0;
}

MeshTopology mesh_topology(const Mesh& mesh) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
  for (const auto& tri : mesh.triangles) {
    for (int e = 0; e < 3; ++e) ++directed[{tri[e], tri[(e + 1) % 3]}];
  }
  MeshTopology topo;
  topo.vertex_count = mesh.vertices.size();
  topo.face_count = mesh.triangles.size();
  topo.watertight = true;
  topo.consistently_oriented = true;
  for (const auto& [edge, count] : directed) {
    const auto rev = directed.find({edge.second, edge.first});
    const int reverse_count = rev == directed.end() ? 0 : rev->second;
    if (count != 1) topo.consistently_oriented = false;
    if (count + reverse_count != 2) topo.watertight = false;
    if (edge.first < edge.second || reverse_count == 0) ++topo.edge_count;
  }
  return topo;
}

namespace {

// Exact integral of (a + c cos t) * c over [lo, hi], where the pair (a, c) is the
// piecewise form x(t) = a + (sigma + w) cos t and rho = sigma + w.
double arc_area_term(double a, double c, double lo, double hi) {
  return c * (a * (hi - lo) + c * (std::sin(hi) - std::sin(lo)));
}

}  // namespace

double surface_area(const Body& body) {
  const double w = body.half_width();
  if (const auto* pw = body.profile().as_piecewise()) {
    // On a piece, x = h cos t - h' sin t + w cos t = a + (sigma + w) cos t.
    // The mirror piece on [-hi, -lo] has a -> -a and sigma -> -sigma.
    double total = 0;
    for (const TrigPiece& p : pw->pieces()) {
      total += arc_area_term(p.a, p.sign + w, p.lo, p.hi);
      total += arc_area_term(-p.a, -p.sign + w, p.lo, p.hi);
    }
    return 2 * kPi * total;
  }
  auto integrand = [&body](double t) {
    const ProfileSample p = sample(body, t);
    return p.x * p.rho;
  };
  return 2 * kPi * quad::integrate(integrand, -kHalfPi, kHalfPi);
}

}  // namespace cwrev
