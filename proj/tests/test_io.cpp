#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cwrev/io.hpp"
#include "oracle.hpp"

using namespace cwrev;

namespace {

ConfigError expect_config_error(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return ConfigError("", "", 0);
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Config, ParsesEachRepresentation) {
  const BodyConfig p = parse_config(R"({"type": "piecewise", "breakpoints": [1.0471975511965976], "sigma0": 1, "b0": 0.0})");
  EXPECT_EQ(p.kind, BodyConfig::Kind::Piecewise);
  EXPECT_EQ(p.breakpoints.size(), 1u);
  EXPECT_FALSE(p.half_width);
  EXPECT_NEAR(analyze(make_body(p)).ratio, 4 - kPi, 1e-12);

  const BodyConfig s = parse_config(R"({"type": "sine_series", "coefficients": [0.2, -0.05], "w": 1.0})");
  EXPECT_EQ(s.kind, BodyConfig::Kind::SineSeries);
  EXPECT_EQ(*s.half_width, 1.0);

  const BodyConfig b = parse_config(R"({"type": "ball", "c": 0.5})");
  EXPECT_EQ(b.kind, BodyConfig::Kind::Ball);
  EXPECT_EQ(make_body(b).half_width(), 1.0);
}

TEST(Config, RejectsClosureViolationWithResidual) {
  const ConfigError e = expect_config_error("{\n  \"type\": \"piecewise\",\n  \"breakpoints\": [0.7853981633974483]\n}");
  EXPECT_EQ(e.field(), "breakpoints");
  EXPECT_EQ(e.line(), 3);
  EXPECT_NE(std::string(e.what()).find("0.2071"), std::string::npos) << e.what();
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_EQ(expect_config_error("{\n\"type\": \"ball\",\n\"c\": }").line(), 3);
  EXPECT_EQ(expect_config_error(R"({"type": "torus"})").field(), "type");
  EXPECT_EQ(expect_config_error(R"({"c": 1})").field(), "type");
  EXPECT_EQ(expect_config_error(R"({"type": "ball", "radius": 1})").field(), "radius");
  EXPECT_EQ(expect_config_error(R"({"type": "ball", "c": "x"})").field(), "c");
  EXPECT_EQ(expect_config_error(R"({"type": "ball", "w": -1})").field(), "w");
  EXPECT_EQ(expect_config_error(R"({"type": "piecewise", "breakpoints": [1.0471975511965976], "sigma0": 2})").field(), "sigma0");
  EXPECT_EQ(expect_config_error(R"({"type": "sine_series", "coefficients": []})").field(), "coefficients");
  EXPECT_EQ(expect_config_error(R"({"type": "sine_series", "coefficients": [0, 0.1], "w": 0.5})").field(), "w");
  EXPECT_EQ(expect_config_error("[1, 2]").line(), 1);
}

TEST(Config, RoundTrip) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    BodyConfig cfg;
    switch (i % 3) {
      case 0: {
        cfg.kind = BodyConfig::Kind::SineSeries;
        const auto h = random_sine_profile(rng);
        cfg.coefficients.assign(h.coefficients().begin(), h.coefficients().end());
        if (i % 2) cfg.half_width = h.critical_half_width() + 0.5;
        break;
      }
      case 1: {
        cfg.kind = BodyConfig::Kind::Piecewise;
        const auto p = random_piecewise_profile(rng, 1 + i % 5);
        cfg.breakpoints.assign(p.breakpoints().begin(), p.breakpoints().end());
        cfg.sigma0 = p.leading_sign();
        cfg.b0 = p.vertical_offset();
        if (i % 2) cfg.half_width = 1.0 + std::abs(u(rng));
        break;
      }
      default:
        cfg.kind = BodyConfig::Kind::Ball;
        cfg.c = u(rng);
        cfg.half_width = 0.1 + std::abs(u(rng));
    }
    const BodyConfig back = parse_config(serialize_config(cfg));
    EXPECT_EQ(back, cfg) << serialize_config(cfg);
  }
}

TEST(Stl, SizeAndContents) {
  const Body b(oracle::reuleaux(), 1.0);
  for (auto [nt, ntheta] : {std::pair{3, 3}, std::pair{20, 17}}) {
    const Mesh m = tessellate(b, nt, ntheta);
    std::ostringstream out;
    write_stl(m, out);
    const std::string bytes = out.str();
    EXPECT_EQ(bytes.size(), 84 + 50 * m.triangles.size());
    EXPECT_EQ(bytes.substr(0, 16), "cwrev binary STL");
    std::uint32_t count = 0;
    for (int i = 3; i >= 0; --i) count = (count << 8) | static_cast<unsigned char>(bytes[80 + i]);
    EXPECT_EQ(count, m.triangles.size());
    std::ostringstream again;
    write_stl(m, again);
    EXPECT_EQ(again.str(), bytes);

    std::istringstream in(bytes);
    const Mesh back = read_stl(in);
    ASSERT_EQ(back.triangles.size(), m.triangles.size());
    EXPECT_NEAR(mesh_signed_volume(back), mesh_signed_volume(m), 1e-5);
  }
}

TEST(Obj, RoundTripIsExact) {
  const Body b(SineSeriesProfile({0.3, -0.2, 0.05}), 3.1);
  const Mesh m = tessellate(b, 40, 33);
  std::stringstream s;
  write_obj(m, s);
  const Mesh back = read_obj(s);
  ASSERT_EQ(back.vertices.size(), m.vertices.size());
  ASSERT_EQ(back.triangles, m.triangles);
  EXPECT_EQ(back.vertices, m.vertices);
  EXPECT_NEAR(mesh_signed_volume(back), mesh_signed_volume(m), 1e-12);
  const auto topo = mesh_topology(back);
  EXPECT_TRUE(topo.watertight);
  EXPECT_EQ(topo.euler_characteristic(), 2);
}

TEST(ProfileExport, Csv) {
  std::ostringstream out;
  export_profile_csv(Body(oracle::reuleaux(), 1.0), 13, out);
  const auto lines = split_lines(out.str());
  ASSERT_EQ(lines.size(), 14u);
  EXPECT_EQ(lines[0], "t,h,dh,s,x,y,rho");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::vector<double> v;
    for (std::string cell; std::getline(row, cell, ',');) v.push_back(std::stod(cell));
    ASSERT_EQ(v.size(), 7u);
    EXPECT_TRUE(std::abs(v[6]) < 1e-12 || std::abs(v[6] - 2) < 1e-12) << lines[i];
    if (i == 1 || i + 1 == lines.size()) EXPECT_LT(std::abs(v[4]), 1e-9);
  }

  std::ostringstream ball;
  export_profile_csv(Body(make_ball(0.1), 0.75), 9, ball);
  const auto rows = split_lines(ball.str());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_NEAR(std::stod(rows[i].substr(rows[i].rfind(',') + 1)), 0.75, 1e-14);
  }
  EXPECT_THROW(export_profile_csv(Body(make_ball(0.0), 1.0), 1, ball), DomainError);
}

TEST(ProfileExport, Svg) {
  std::ostringstream out;
  export_profile_svg(Body(oracle::reuleaux(), 1.0), 50, out);
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("<path"), std::string::npos);
  EXPECT_NE(s.find(" Z\""), std::string::npos);
}

TEST(Json, Reports) {
  const auto j = to_json(analyze(Body(oracle::reuleaux(), 1.0)));
  EXPECT_EQ(j.at("method"), "exact-piecewise");
  EXPECT_EQ(j.at("ratio").get<double>(), ratio(Body(oracle::reuleaux(), 1.0)));
  SearchOptions opts;
  opts.seeds = 2;
  const auto r = to_json(minimize(opts));
  EXPECT_TRUE(r.at("best").contains("breakpoints"));
  EXPECT_FALSE(r.at("trace").empty());
  const auto p = to_json(run_wirtinger(5, 1));
  EXPECT_EQ(p.at("parts").size(), 3u);
  EXPECT_EQ(p.at("violations"), 0);
}
