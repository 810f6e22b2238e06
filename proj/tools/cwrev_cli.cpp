// Command-line front end: analyze, mesh, profile, optimize, verify.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cwrev/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPropertyViolation = 3;

constexpr std::uint64_t kDefaultSeed = 20080915;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CWREV_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric CWREV_SEED=" << env << '\n';
    }
  }
  return kDefaultSeed;
}

cwrev::BodyConfig load_config(const std::string& path) {
  std::ostringstream text;
  if (path == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw cwrev::ConfigError("cannot open config file " + path, "", 0);
    text << in.rdbuf();
  }
  return cwrev::parse_config(text.str());
}

std::string kind_name(cwrev::BodyConfig::Kind kind) {
  switch (kind) {
    case cwrev::BodyConfig::Kind::SineSeries: return "sine_series";
    case cwrev::BodyConfig::Kind::Piecewise: return "piecewise";
    case cwrev::BodyConfig::Kind::Ball: return "ball";
  }
  return "?";
}

int cmd_analyze(const std::string& path, bool as_json) {
  const auto cfg = load_config(path);
  const cwrev::Body body = cwrev::make_body(cfg);
  const auto report = cwrev::analyze(body);
  if (as_json) {
    auto j = cwrev::to_json(report);
    j["type"] = kind_name(cfg.kind);
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  std::cout << std::fixed << std::setprecision(9);
  std::cout << "representation " << kind_name(cfg.kind) << " (" << cwrev::to_string(report.method)
            << ")\n"
            << "w0      " << report.w0 << '\n'
            << "w       " << report.half_width << '\n'
            << "F       " << report.F << '\n'
            << "volume  " << report.volume << '\n'
            << "area    " << report.area << '\n'
            << "ratio   " << report.ratio << '\n';
  return kExitOk;
}

int cmd_mesh(const std::string& path, int nt, int ntheta, const std::string& output,
             const std::string& format) {
  const cwrev::Body body = cwrev::make_body(load_config(path));
  const cwrev::Mesh mesh = cwrev::tessellate(body, nt, ntheta);
  const auto fmt = format == "obj" ? cwrev::MeshFormat::Obj : cwrev::MeshFormat::Stl;
  std::ofstream out(output, std::ios::binary);
  if (!out) throw cwrev::Error("cannot open " + output + " for writing");
  cwrev::export_mesh(mesh, fmt, out);
  std::cout << "wrote " << mesh.triangles.size() << " triangles, " << mesh.vertices.size()
            << " vertices to " << output << " (signed volume " << std::setprecision(12)
            << cwrev::mesh_signed_volume(mesh) << ")\n";
  return kExitOk;
}

int cmd_profile(const std::string& path, int n, const std::string& output, bool svg) {
  const cwrev::Body body = cwrev::make_body(load_config(path));
  std::ofstream out(output);
  if (!out) throw cwrev::Error("cannot open " + output + " for writing");
  if (svg) {
    cwrev::export_profile_svg(body, n, out);
  } else {
    cwrev::export_profile_csv(body, n, out);
  }
  return kExitOk;
}

int cmd_optimize(std::size_t k, std::size_t seeds, std::uint64_t seed, bool as_json) {
  cwrev::SearchOptions opts;
  opts.k = k;
  opts.seeds = seeds;
  opts.rng_seed = seed;
  const auto result = cwrev::minimize(opts);
  if (as_json) {
    std::cout << cwrev::to_json(result).dump(2) << '\n';
    return kExitOk;
  }
  std::size_t interior = 0;
  double min_interior_gap = std::numeric_limits<double>::infinity();
  for (const auto& e : result.trace) {
    if (e.interior && e.breakpoints.size() >= 2) {
      ++interior;
      min_interior_gap = std::min(min_interior_gap, e.F - cwrev::kReuleauxFunctional);
    }
  }
  std::cout << std::fixed << std::setprecision(9);
  std::cout << "k " << k << ", seeds " << seeds << ", rng seed " << seed << '\n';
  std::cout << "best breakpoints";
  for (double tau : result.best.breakpoints()) std::cout << ' ' << tau;
  std::cout << "\nsigma0  " << result.best.leading_sign() << "\nF       " << result.best_F
            << "\nratio   " << 1 + 3 * result.best_F << " (at w = w0 = 1)\n"
            << "converged " << (result.converged ? "yes" : "no") << '\n'
            << "trace   " << result.trace.size() << " entries, " << interior
            << " interior with k >= 2";
  if (interior) std::cout << std::scientific << ", smallest F - (1 - pi/3) = " << min_interior_gap;
  std::cout << '\n';
  return kExitOk;
}

int cmd_verify(std::size_t samples, std::uint64_t seed, bool as_json) {
  const cwrev::PropertyOutcome outcomes[] = {
      cwrev::run_wirtinger(samples, seed),
      cwrev::run_bijection_checks(samples, seed + 1),
      cwrev::run_variational_checks(samples, seed + 2),
  };
  std::size_t violations = 0;
  for (const auto& o : outcomes) violations += o.violations;
  if (as_json) {
    auto j = nlohmann::json::array();
    for (const auto& o : outcomes) j.push_back(cwrev::to_json(o));
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& o : outcomes) {
      for (const auto& p : o.parts) {
        std::cout << (p.passed() ? "[PASS] " : "[FAIL] ") << std::left << std::setw(44) << p.id
                  << std::right << " samples " << std::setw(7) << p.samples << "  violations "
                  << p.violations << "  worst " << std::scientific << std::setprecision(3)
                  << p.worst_residual << std::defaultfloat << "  (" << std::setprecision(3)
                  << p.elapsed_seconds << " s)\n";
      }
    }
  }
  return violations == 0 ? kExitOk : kExitPropertyViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant-width bodies of revolution: analysis, meshing and search"};
  app.require_subcommand(1);

  std::string config;
  bool as_json = false;

  auto* analyze = app.add_subcommand("analyze", "Print w0, F, volume, area and ratio of a body");
  analyze->add_option("config", config, "JSON body config ('-' for stdin)")->required();
  analyze->add_flag("--json", as_json, "Machine-readable output");

  int nt = 128, ntheta = 128, samples_n = 512;
  std::string output, format = "stl";
  auto* mesh = app.add_subcommand("mesh", "Tessellate the boundary surface");
  mesh->add_option("config", config, "JSON body config")->required();
  mesh->add_option("--nt", nt, "Latitude bands")->check(CLI::Range(3, 1 << 16));
  mesh->add_option("--ntheta", ntheta, "Samples per ring")->check(CLI::Range(3, 1 << 16));
  mesh->add_option("-o,--output", output, "Output file")->required();
  mesh->add_option("--format", format, "stl or obj")->check(CLI::IsMember({"stl", "obj"}));

  bool svg = false;
  auto* profile = app.add_subcommand("profile", "Sample the generating curve");
  profile->add_option("config", config, "JSON body config")->required();
  profile->add_option("-n", samples_n, "Sample count")->check(CLI::Range(2, 1 << 24));
  profile->add_option("-o,--output", output, "Output file")->required();
  profile->add_flag("--svg", svg, "Write an SVG path instead of CSV");

  std::size_t k = 1, seeds = 10;
  std::uint64_t seed = default_seed();
  auto* optimize = app.add_subcommand("optimize", "Minimize F over piecewise profiles with k breakpoints");
  optimize->add_option("--k", k, "Interior breakpoint count")->check(CLI::Range(1, 64));
  optimize->add_option("--seeds", seeds, "Multi-start count")->check(CLI::Range(1, 1000000));
  optimize->add_option("--seed", seed, "RNG seed (default from CWREV_SEED)");
  optimize->add_flag("--json", as_json, "Machine-readable output");

  std::size_t verify_samples = 1000;
  auto* verify = app.add_subcommand("verify", "Run the property battery");
  verify->add_option("--samples", verify_samples, "Samples per property")->check(CLI::Range(1, 10000000));
  verify->add_option("--seed", seed, "RNG seed (default from CWREV_SEED)");
  verify->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(config, as_json);
    if (*mesh) return cmd_mesh(config, nt, ntheta, output, format);
    if (*profile) return cmd_profile(config, samples_n, output, svg);
    if (*optimize) return cmd_optimize(k, seeds, seed, as_json);
    if (*verify) return cmd_verify(verify_samples, seed, as_json);
  } catch (const cwrev::Error& e) {
    // Config, validation, infeasibility and I/O failures.
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}
