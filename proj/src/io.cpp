#include "cwrev/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace cwrev {

using nlohmann::json;

namespace {

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

int line_of_field(std::string_view text, const std::string& field) {
  const auto pos = text.find('"' + field + '"');
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

[[noreturn]] void fail(std::string_view text, const std::string& field, const std::string& what) {
  const int line = line_of_field(text, field);
  std::ostringstream os;
  os << "config";
  if (line > 0) os << " line " << line;
  os << ", field \"" << field << "\": " << what;
  throw ConfigError(os.str(), field, line);
}

double read_number(std::string_view text, const json& j, const std::string& field) {
  const json& v = j.at(field);
  if (!v.is_number()) fail(text, field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(text, field, "expected a finite number");
  return d;
}

std::vector<double> read_array(std::string_view text, const json& j, const std::string& field) {
  if (!j.contains(field)) fail(text, field, "missing");
  const json& v = j.at(field);
  if (!v.is_array()) fail(text, field, "expected an array of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) fail(text, field, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

void put_f32(std::ostream& out, double v) {
  put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (!in) throw Error("truncated STL stream");
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

float get_f32(std::istream& in) { return std::bit_cast<float>(get_u32(in)); }

void check_stream(const std::ostream& out) {
  if (!out) throw Error("write failure");
}

}  // namespace

BodyConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const int line = line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError("config line " + std::to_string(line) + ": syntax error: " + e.what(), "", line);
  }
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object", "", 1);
  if (!j.contains("type") || !j["type"].is_string()) fail(text, "type", "missing representation tag");

  BodyConfig cfg;
  const auto type = j["type"].get<std::string>();
  std::set<std::string> allowed{"type", "w"};
  if (type == "sine_series") {
    cfg.kind = BodyConfig::Kind::SineSeries;
    cfg.coefficients = read_array(text, j, "coefficients");
    if (cfg.coefficients.empty()) fail(text, "coefficients", "at least one coefficient is required");
    allowed.insert("coefficients");
  } else if (type == "piecewise") {
    cfg.kind = BodyConfig::Kind::Piecewise;
    cfg.breakpoints = read_array(text, j, "breakpoints");
    if (j.contains("sigma0")) {
      const double s = read_number(text, j, "sigma0");
      if (s != 1.0 && s != -1.0) fail(text, "sigma0", "must be 1 or -1");
      cfg.sigma0 = static_cast<int>(s);
    }
    if (j.contains("b0")) cfg.b0 = read_number(text, j, "b0");
    allowed.insert({"breakpoints", "sigma0", "b0"});
  } else if (type == "ball") {
    cfg.kind = BodyConfig::Kind::Ball;
    if (j.contains("c")) cfg.c = read_number(text, j, "c");
    allowed.insert("c");
  } else {
    fail(text, "type", "unknown representation \"" + type + "\" (expected sine_series, piecewise or ball)");
  }
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(text, key, "unknown field for type \"" + type + "\"");
  }
  if (j.contains("w")) {
    cfg.half_width = read_number(text, j, "w");
    if (*cfg.half_width <= 0) fail(text, "w", "half-width must be positive");
  }

  const Profile profile = make_profile(cfg);
  const ValidationReport report = validate(profile);
  if (!report.ok()) {
    const char* field = cfg.kind == BodyConfig::Kind::Piecewise ? "breakpoints" : "coefficients";
    fail(text, field, report.summary());
  }
  if (cfg.half_width) {
    const double w0v = w0(profile);
    if (*cfg.half_width < w0v - kFeasibilityTol) {
      std::ostringstream os;
      os.precision(12);
      os << "half-width " << *cfg.half_width << " is below w0 = " << w0v;
      fail(text, "w", os.str());
    }
  }
  return cfg;
}

std::string serialize_config(const BodyConfig& cfg) {
  json j;
  switch (cfg.kind) {
    case BodyConfig::Kind::SineSeries:
      j["type"] = "sine_series";
      j["coefficients"] = cfg.coefficients;
      break;
    case BodyConfig::Kind::Piecewise:
      j["type"] = "piecewise";
      j["breakpoints"] = cfg.breakpoints;
      j["sigma0"] = cfg.sigma0;
      j["b0"] = cfg.b0;
      break;
    case BodyConfig::Kind::Ball:
      j["type"] = "ball";
      j["c"] = cfg.c;
      break;
  }
  if (cfg.half_width) j["w"] = *cfg.half_width;
  return j.dump(2);
}

Profile make_profile(const BodyConfig& cfg) {
  switch (cfg.kind) {
    case BodyConfig::Kind::SineSeries:
      return SineSeriesProfile(cfg.coefficients);
    case BodyConfig::Kind::Piecewise:
      return PiecewiseTrigProfile(cfg.breakpoints, cfg.sigma0, cfg.b0);
    case BodyConfig::Kind::Ball:
      break;
  }
  return make_ball(cfg.c);
}

Body make_body(const BodyConfig& cfg) {
  Profile profile = make_profile(cfg);
  double w = 1.0;
  if (cfg.half_width) {
    w = *cfg.half_width;
  } else if (cfg.kind != BodyConfig::Kind::Ball) {
    w = w0(profile);
  }
  return Body(std::move(profile), w);
}

void write_stl(const Mesh& mesh, std::ostream& out) {
  std::array<char, 80> header{};
  constexpr std::string_view tag = "cwrev binary STL";
  std::copy(tag.begin(), tag.end(), header.begin());
  out.write(header.data(), header.size());
  put_u32(out, static_cast<std::uint32_t>(mesh.triangles.size()));
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    const Vec3 u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    const Vec3 v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    Vec3 n{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    for (double& x : n) x = len > 0 ? x / len : 0.0;
    for (double x : n) put_f32(out, x);
    for (const Vec3* p : {&a, &b, &c}) {
      for (double x : *p) put_f32(out, x);
    }
    out.put('\0');
    out.put('\0');
  }
  check_stream(out);
}

void write_obj(const Mesh& mesh, std::ostream& out) {
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "# cwrev surface of revolution\n";
  for (const Vec3& v : mesh.vertices) out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& t : mesh.triangles) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
  check_stream(out);
}

void export_mesh(const Mesh& mesh, MeshFormat format, std::ostream& out) {
  if (format == MeshFormat::Stl) {
    write_stl(mesh, out);
  } else {
    write_obj(mesh, out);
  }
}

Mesh read_stl(std::istream& in) {
  std::array<char, 80> header{};
  in.read(header.data(), header.size());
  const std::uint32_t count = get_u32(in);
  Mesh mesh;
  mesh.vertices.reserve(3 * static_cast<std::size_t>(count));
  for (std::uint32_t i = 0; i < count; ++i) {
    for (int k = 0; k < 3; ++k) get_f32(in);
    std::array<std::uint32_t, 3> tri{};
    for (auto& id : tri) {
      Vec3 v{};
      for (double& x : v) x = get_f32(in);
      id = static_cast<std::uint32_t>(mesh.vertices.size());
      mesh.vertices.push_back(v);
    }
    mesh.triangles.push_back(tri);
    std::array<char, 2> attr{};
    in.read(attr.data(), 2);
  }
  if (!in) throw Error("truncated STL stream");
  return mesh;
}

Mesh read_obj(std::istream& in) {
  Mesh mesh;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Vec3 v{};
      ls >> v[0] >> v[1] >> v[2];
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<std::uint32_t, 3> t{};
      for (auto& id : t) {
        ls >> id;
        --id;
      }
      mesh.triangles.push_back(t);
    }
    if (!tag.empty() && tag[0] != '#' && ls.fail()) throw Error("malformed OBJ line: " + line);
  }
  return mesh;
}

void export_profile_csv(const Body& body, int n, std::ostream& out) {
  if (n < 2) throw DomainError("profile export needs at least 2 samples");
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "t,h,dh,s,x,y,rho\n";
  for (int i = 0; i < n; ++i) {
    const double t = -kHalfPi + kPi * i / (n - 1);
    const ProfileSample p = sample(body, t);
    out << p.t << ',' << p.h << ',' << p.dh << ',' << p.s << ',' << p.x << ',' << p.y << ','
        << p.rho << '\n';
  }
  check_stream(out);
}

void export_profile_svg(const Body& body, int n, std::ostream& out) {
  if (n < 2) throw DomainError("profile export needs at least 2 samples");
  std::vector<Point2> pts;
  pts.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts.push_back(curve_point(body, -kHalfPi + kPi * i / (n - 1)));
  for (int i = n - 1; i >= 0; --i) pts.push_back({-pts[static_cast<std::size_t>(i)].x, pts[static_cast<std::size_t>(i)].y});

  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Point2& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double margin = 0.05 * std::max(xmax - xmin, ymax - ymin);
  out.precision(10);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xmin - margin << ' '
      << -(ymax + margin) << ' ' << (xmax - xmin) + 2 * margin << ' ' << (ymax - ymin) + 2 * margin
      << "\">\n  <path fill=\"none\" stroke=\"black\" stroke-width=\"" << 0.005 * (xmax - xmin)
      << "\" d=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << (i ? " L " : "M ") << pts[i].x << ' ' << -pts[i].y;
  }
  out << " Z\"/>\n</svg>\n";
  check_stream(out);
}

json to_json(const FunctionalReport& r) {
  return {{"w0", r.w0},         {"w", r.half_width}, {"F", r.F},
          {"volume", r.volume}, {"area", r.area},    {"ratio", r.ratio},
          {"method", std::string(to_string(r.method))}};
}

json to_json(const SearchResult& r) {
  json trace = json::array();
  for (const TraceEntry& e : r.trace) {
    trace.push_back({{"breakpoints", e.breakpoints},
                     {"sigma0", e.leading_sign},
                     {"F", e.F},
                     {"interior", e.interior}});
  }
  const auto taus = r.best.breakpoints();
  return {{"best", {{"breakpoints", std::vector<double>(taus.begin(), taus.end())},
                    {"sigma0", r.best.leading_sign()},
                    {"F", r.best_F},
                    {"ratio", 1 + 3 * r.best_F}}},
          {"converged", r.converged},
          {"trace", std::move(trace)}};
}

json to_json(const PropertyOutcome& o) {
  json j{{"id", o.id},
         {"samples", o.samples},
         {"worst_residual", o.worst_residual},
         {"violations", o.violations},
         {"elapsed_seconds", o.elapsed_seconds}};
  if (!o.parts.empty()) {
    j["parts"] = json::array();
    for (const auto& p : o.parts) j["parts"].push_back(to_json(p));
  }
  return j;
}

}  // namespace cwrev
