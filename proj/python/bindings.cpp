#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cwrev/errors.hpp"
#include "cwrev/functionals.hpp"
#include "cwrev/geometry.hpp"
#include "cwrev/io.hpp"
#include "cwrev/properties.hpp"
#include "cwrev/variational.hpp"

namespace py = pybind11;
using namespace cwrev;

namespace {

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

py::tuple mesh_arrays(const Mesh& mesh) {
  py::array_t<double> verts({static_cast<py::ssize_t>(mesh.vertices.size()), py::ssize_t{3}});
  auto v = verts.mutable_unchecked<2>();
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    for (int k = 0; k < 3; ++k) v(i, k) = mesh.vertices[i][k];
  }
  py::array_t<std::uint32_t> tris({static_cast<py::ssize_t>(mesh.triangles.size()), py::ssize_t{3}});
  auto t = tris.mutable_unchecked<2>();
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    for (int k = 0; k < 3; ++k) t(i, k) = mesh.triangles[i][k];
  }
  return py::make_tuple(verts, tris);
}

Mesh mesh_from_arrays(py::array_t<double, py::array::c_style | py::array::forcecast> verts,
                      py::array_t<std::uint32_t, py::array::c_style | py::array::forcecast> tris) {
  if (verts.ndim() != 2 || verts.shape(1) != 3 || tris.ndim() != 2 || tris.shape(1) != 3) {
    throw DomainError("expected (n, 3) vertex and triangle arrays");
  }
  Mesh m;
  auto v = verts.unchecked<2>();
  auto t = tris.unchecked<2>();
  for (py::ssize_t i = 0; i < v.shape(0); ++i) m.vertices.push_back({v(i, 0), v(i, 1), v(i, 2)});
  for (py::ssize_t i = 0; i < t.shape(0); ++i) m.triangles.push_back({t(i, 0), t(i, 1), t(i, 2)});
  return m;
}

py::dict report_dict(const FunctionalReport& r) {
  py::dict d;
  d["F"] = r.F;
  d["w0"] = r.w0;
  d["w"] = r.half_width;
  d["volume"] = r.volume;
  d["area"] = r.area;
  d["ratio"] = r.ratio;
  d["method"] = std::string(to_string(r.method));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Constant-width bodies of revolution";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<ConvexityError>(m, "ConvexityError", error.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

  py::class_<Jet>(m, "Jet")
      .def_readonly("h", &Jet::h)
      .def_readonly("dh", &Jet::dh)
      .def_readonly("d2h", &Jet::d2h)
      .def("__repr__", [](const Jet& j) {
        return "Jet(h=" + std::to_string(j.h) + ", dh=" + std::to_string(j.dh) + ", d2h=" + std::to_string(j.d2h) + ")";
      });

  py::class_<SineSeriesProfile>(m, "SineSeriesProfile")
      .def(py::init<std::vector<double>>(), py::arg("coefficients"))
      .def_property_readonly("coefficients", [](const SineSeriesProfile& p) { return to_vector(p.coefficients()); })
      .def("critical_half_width", &SineSeriesProfile::critical_half_width);

  py::class_<PiecewiseTrigProfile>(m, "PiecewiseTrigProfile")
      .def(py::init<std::vector<double>, int, double>(), py::arg("breakpoints"), py::arg("leading_sign") = 1,
           py::arg("vertical_offset") = 0.0)
      .def_static(
          "from_cosines",
          [](const std::vector<double>& c, int sign, double offset) {
            return PiecewiseTrigProfile::from_cosines(c, sign, offset);
          },
          py::arg("cosines"), py::arg("leading_sign") = 1, py::arg("vertical_offset") = 0.0)
      .def_property_readonly("breakpoints", [](const PiecewiseTrigProfile& p) { return to_vector(p.breakpoints()); })
      .def_property_readonly("leading_sign", &PiecewiseTrigProfile::leading_sign)
      .def_property_readonly("vertical_offset", &PiecewiseTrigProfile::vertical_offset)
      .def("closure_residual", &PiecewiseTrigProfile::closure_residual)
      .def("negated", &PiecewiseTrigProfile::negated);

  py::class_<Profile>(m, "Profile")
      .def(py::init<SineSeriesProfile>())
      .def(py::init<PiecewiseTrigProfile>())
      .def("eval", &Profile::eval, py::arg("t"))
      .def("eval_many",
           [](const Profile& p, py::array_t<double, py::array::c_style | py::array::forcecast> t) {
             auto in = t.unchecked<1>();
             py::array_t<double> out({in.shape(0), py::ssize_t{3}});
             auto o = out.mutable_unchecked<2>();
             for (py::ssize_t i = 0; i < in.shape(0); ++i) {
               const Jet j = p.eval(in(i));
               o(i, 0) = j.h;
               o(i, 1) = j.dh;
               o(i, 2) = j.d2h;
             }
             return out;
           })
      .def_property_readonly("is_piecewise", &Profile::is_piecewise)
      .def("singular_points", &Profile::singular_points);
  py::implicitly_convertible<SineSeriesProfile, Profile>();
  py::implicitly_convertible<PiecewiseTrigProfile, Profile>();

  py::class_<Body>(m, "Body")
      .def(py::init<Profile, double>(), py::arg("profile"), py::arg("half_width"))
      .def_property_readonly("profile", &Body::profile)
      .def_property_readonly("half_width", &Body::half_width)
      .def_property_readonly("width", &Body::width)
      .def_property_readonly("critical_half_width", &Body::critical_half_width);

  m.def("w0", &w0, py::arg("profile"));
  m.def("make_ball", &make_ball, py::arg("c"));
  m.def("validate", [](const Profile& p) {
    py::list out;
    for (const Violation& v : validate(p).violations) out.append(py::make_tuple(v.constraint, v.residual));
    return out;
  });

  m.def("curve_point", [](const Body& b, double t) {
    const Point2 p = curve_point(b, t);
    return py::make_tuple(p.x, p.y);
  });
  m.def("radius_of_curvature", &radius_of_curvature);
  m.def("min_radius_of_curvature", &min_radius_of_curvature, py::arg("profile"), py::arg("half_width"),
        py::arg("samples") = 4096);
  m.def("width_at", &width_at);
  m.def("surface_point", &surface_point);
  m.def("surface_area", &surface_area);
  m.def(
      "tessellate", [](const Body& b, int nt, int ntheta) { return mesh_arrays(tessellate(b, nt, ntheta)); },
      py::arg("body"), py::arg("nt") = 128, py::arg("ntheta") = 128,
      "Returns (vertices, triangles) as numpy arrays.");
  m.def("mesh_signed_volume", [](py::array_t<double> v, py::array_t<std::uint32_t> t) {
    return mesh_signed_volume(mesh_from_arrays(v, t));
  });
  m.def("euler_characteristic", [](py::array_t<double> v, py::array_t<std::uint32_t> t) {
    return mesh_topology(mesh_from_arrays(v, t)).euler_characteristic();
  });

  m.def("F", &F);
  m.def("F_quadrature", &F_quadrature);
  m.def("F_boundary_form", &F_boundary_form);
  m.def("F_closed_piecewise", &F_closed_piecewise);
  m.def("F_bilinear", &F_bilinear);
  m.def("volume", &volume);
  m.def("ratio", &ratio);
  m.def("normal_flow", &normal_flow, py::arg("body"), py::arg("tau"));
  m.def("analyze", [](const Body& b) { return report_dict(analyze(b)); });
  m.attr("REULEAUX_RATIO") = kReuleauxRatio;
  m.attr("REULEAUX_FUNCTIONAL") = kReuleauxFunctional;
  m.attr("MEISSNER_RATIO") = kMeissnerRatio;

  py::class_<TripleParams>(m, "TripleParams")
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
      .def_readwrite("x", &TripleParams::x)
      .def_readwrite("y", &TripleParams::y)
      .def_readwrite("z", &TripleParams::z);
  m.def("triple_params", [](const PiecewiseTrigProfile& p, std::size_t middle) { return triple_at(p, middle).params; });
  m.def("merge_triple", &merge_triple, py::arg("profile"), py::arg("middle"));
  m.def("perturb_middle", &perturb_middle, py::arg("profile"), py::arg("middle"), py::arg("eps"));
  m.def("delta_F_merge", [](double x, double y, double z) { return delta_F_merge({x, y, z}); });
  m.def("dF_deps", [](double x, double y, double z) { return dF_deps({x, y, z}); });
  m.def(
      "minimize",
      [](std::size_t k, std::size_t seeds, std::uint64_t seed, int leading_sign) {
        SearchOptions o;
        o.k = k;
        o.seeds = seeds;
        o.rng_seed = seed;
        o.leading_sign = leading_sign;
        const SearchResult r = minimize(o);
        py::list trace;
        for (const TraceEntry& e : r.trace) {
          py::dict d;
          d["breakpoints"] = e.breakpoints;
          d["sigma0"] = e.leading_sign;
          d["F"] = e.F;
          d["interior"] = e.interior;
          trace.append(d);
        }
        py::dict out;
        out["best"] = r.best;
        out["F"] = r.best_F;
        out["converged"] = r.converged;
        out["trace"] = trace;
        return out;
      },
      py::arg("k"), py::arg("seeds") = 10, py::arg("seed") = 20080915, py::arg("leading_sign") = 1);

  auto outcome = [](const PropertyOutcome& o) {
    py::dict d;
    d["id"] = o.id;
    d["samples"] = o.samples;
    d["violations"] = o.violations;
    d["worst_residual"] = o.worst_residual;
    return d;
  };
  m.def("run_wirtinger", [outcome](std::size_t n, std::uint64_t seed) { return outcome(run_wirtinger(n, seed)); });
  m.def("run_bijection_checks",
        [outcome](std::size_t n, std::uint64_t seed) { return outcome(run_bijection_checks(n, seed)); });
  m.def("run_variational_checks",
        [outcome](std::size_t n, std::uint64_t seed) { return outcome(run_variational_checks(n, seed)); });

  m.def("body_from_config", [](const std::string& text) { return make_body(parse_config(text)); },
        py::arg("json_text"));
}
