#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cwrev/errors.hpp"
#include "cwrev/functionals.hpp"
#include "cwrev/geometry.hpp"
#include "cwrev/profile.hpp"
#include "cwrev/properties.hpp"
#include "cwrev/variational.hpp"

namespace cwrev {

/// Rejected configuration. `field` is empty for syntax errors; `line` is 1-based
/// (0 when unknown).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, std::string field, int line)
      : Error(message), field_(std::move(field)), line_(line) {}
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

/// JSON body description, e.g.
///   {"type": "piecewise", "breakpoints": [1.0471975512], "sigma0": 1, "b0": 0.0}
///   {"type": "sine_series", "coefficients": [0.2, -0.05], "w": 1.0}
///   {"type": "ball", "c": 0.0, "w": 1.0}
/// Angles are radians. "w" defaults to w0(h), or to 1 for a ball.
struct BodyConfig {
  enum class Kind { SineSeries, Piecewise, Ball };

  Kind kind = Kind::Ball;
  std::vector<double> coefficients;
  std::vector<double> breakpoints;
  int sigma0 = 1;
  double b0 = 0.0;
  double c = 0.0;
  std::optional<double> half_width;

  friend bool operator==(const BodyConfig&, const BodyConfig&) = default;
};

/// Parses and validates; throws ConfigError naming the offending field.
BodyConfig parse_config(std::string_view text);

std::string serialize_config(const BodyConfig& config);

Profile make_profile(const BodyConfig& config);

/// Throws ValidationError if the pair is not a convex body.
Body make_body(const BodyConfig& config);

enum class MeshFormat { Stl, Obj };

/// Binary STL: 80-byte header, uint32 triangle count, then 50 bytes per
/// triangle (normal and three vertices as little-endian float32, uint16 zero).
void write_stl(const Mesh& mesh, std::ostream& out);

/// Text OBJ with `v` and 1-based `f` records at full double precision.
void write_obj(const Mesh& mesh, std::ostream& out);

void export_mesh(const Mesh& mesh, MeshFormat format, std::ostream& out);

/// Triangles of a binary STL, three fresh vertices per triangle.
Mesh read_stl(std::istream& in);

Mesh read_obj(std::istream& in);

/// CSV with header t,h,dh,s,x,y,rho and n uniform samples of [-pi/2, pi/2].
void export_profile_csv(const Body& body, int n, std::ostream& out);

/// SVG path of the closed generating curve (the curve and its mirror image).
void export_profile_svg(const Body& body, int n, std::ostream& out);

nlohmann::json to_json(const FunctionalReport& report);
nlohmann::json to_json(const SearchResult& result);
nlohmann::json to_json(const PropertyOutcome& outcome);

}  // namespace cwrev
