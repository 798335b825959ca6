#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twinsurf/catalog.hpp"
#include "twinsurf/conformal.hpp"
#include "twinsurf/gauss.hpp"
#include "twinsurf/gfield.hpp"
#include "twinsurf/parallel.hpp"
#include "twinsurf/report.hpp"
#include "twinsurf/slag.hpp"
#include "twinsurf/solver.hpp"
#include "twinsurf/systems.hpp"
#include "twinsurf/twin.hpp"
#include "twinsurf/verify.hpp"

namespace py = pybind11;
using namespace twinsurf;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

// Height maps travel as (n, ny, nx) arrays; a 2-D array is one component.
HeightMap to_height(const GridDomain& d, const Array& a) {
  d.validate();
  const auto buf = a.request();
  std::size_t n = 1;
  if (buf.ndim == 3) {
    n = static_cast<std::size_t>(buf.shape[0]);
  } else if (buf.ndim != 2) {
    throw Error(ErrorCode::InvalidArgument, "expected an array of shape (ny, nx) or (n, ny, nx)");
  }
  if (buf.shape[buf.ndim - 2] != d.ny || buf.shape[buf.ndim - 1] != d.nx)
    throw Error(ErrorCode::InvalidArgument, "array shape does not match the grid");
  const double* p = static_cast<const double*>(buf.ptr);
  std::vector<ScalarField> comps(n, ScalarField(d));
  for (std::size_t c = 0; c < n; ++c) std::copy(p + c * d.size(), p + (c + 1) * d.size(), comps[c].values.begin());
  HeightMap h(std::move(comps));
  h.validate();
  return h;
}

ScalarField to_scalar(const GridDomain& d, const Array& a) {
  auto h = to_height(d, a);
  if (h.n() != 1) throw Error(ErrorCode::InvalidArgument, "expected a single component");
  return std::move(h.components[0]);
}

Array from_fields(const std::vector<ScalarField>& comps) {
  const auto& d = comps.at(0).domain;
  Array out({static_cast<py::ssize_t>(comps.size()), static_cast<py::ssize_t>(d.ny), static_cast<py::ssize_t>(d.nx)});
  double* p = out.mutable_data();
  for (std::size_t c = 0; c < comps.size(); ++c) std::copy(comps[c].values.begin(), comps[c].values.end(), p + c * d.size());
  return out;
}

Array from_field(const ScalarField& f) {
  Array out({static_cast<py::ssize_t>(f.domain.ny), static_cast<py::ssize_t>(f.domain.nx)});
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

CArray from_projective(const ProjectivePointField& g) {
  const auto& d = g.domain;
  CArray out({static_cast<py::ssize_t>(g.components.size()), static_cast<py::ssize_t>(d.ny), static_cast<py::ssize_t>(d.nx)});
  auto* p = out.mutable_data();
  for (std::size_t c = 0; c < g.components.size(); ++c)
    std::copy(g.components[c].values.begin(), g.components[c].values.end(), p + c * d.size());
  return out;
}

ProjectivePointField to_projective(const GridDomain& d, const CArray& a) {
  const auto buf = a.request();
  if (buf.ndim != 3 || buf.shape[1] != d.ny || buf.shape[2] != d.nx || buf.shape[0] < 3)
    throw Error(ErrorCode::InvalidArgument, "expected a complex array of shape (n + 2, ny, nx)");
  ProjectivePointField g;
  g.domain = d;
  const auto* p = static_cast<const std::complex<double>*>(buf.ptr);
  for (py::ssize_t c = 0; c < buf.shape[0]; ++c) {
    ComplexField z(d);
    std::copy(p + c * d.size(), p + (c + 1) * d.size(), z.values.begin());
    g.components.push_back(std::move(z));
  }
  normalize(g);
  return g;
}

std::string js(const Json& j) { return dump(j); }

NodeIndex node(const std::pair<int, int>& p) { return {p.first, p.second}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimal graphs, maximal twins, special Lagrangian lifts and Gauss maps on grids";

  // Errors surface as TwinsurfError(code, message).
  static py::handle error_type = py::exception<Error>(m, "TwinsurfError", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::tuple args = py::make_tuple(std::string(to_string(e.code())), e.what());
      PyErr_SetObject(error_type.ptr(), args.ptr());
    }
  });

  py::class_<GridDomain>(m, "GridDomain")
      .def(py::init([](double x0, double y0, double dx, double dy, int nx, int ny) {
             GridDomain d{x0, y0, dx, dy, nx, ny};
             d.validate();
             return d;
           }),
           py::arg("x0"), py::arg("y0"), py::arg("dx"), py::arg("dy"), py::arg("nx"), py::arg("ny"))
      .def_static("span", &GridDomain::span, py::arg("x0"), py::arg("y0"), py::arg("x1"), py::arg("y1"), py::arg("nx"),
                  py::arg("ny"))
      .def_readonly("x0", &GridDomain::x0)
      .def_readonly("y0", &GridDomain::y0)
      .def_readonly("dx", &GridDomain::dx)
      .def_readonly("dy", &GridDomain::dy)
      .def_readonly("nx", &GridDomain::nx)
      .def_readonly("ny", &GridDomain::ny)
      .def("__eq__", [](const GridDomain& a, const GridDomain& b) { return a == b; })
      .def("__repr__", [](const GridDomain& d) { return "GridDomain(" + js(to_json(d)) + ")"; });

  m.def("set_num_threads", &set_num_threads);
  m.def("num_threads", &num_threads);

  m.def("catalog_names", &catalog_names);
  m.def("default_params", &default_params);
  m.def("default_rectangle", &default_rectangle);
  m.def(
      "sample", [](const std::string& name, const Params& params, const GridDomain& d) {
        return from_fields(make_surface(name, params, d).components);
      },
      py::arg("name"), py::arg("params") = Params{}, py::arg("grid"));
  m.def("known_lift", [](const std::string& name, const Params& params, double x, double y) -> py::object {
    const auto lift = known_lift(name, params);
    if (!lift) return py::none();
    const auto [M, N] = (*lift)(x, y);
    return py::make_tuple(M, N);
  });

  m.def("read_gfield", [](const std::string& path) {
    const auto g = read_gfield(path);
    return py::make_tuple(g.domain, from_fields(g.components));
  });
  m.def("write_gfield", [](const std::string& path, const GridDomain& d, const Array& a) {
    write_gfield(path, d, to_height(d, a).components);
  });

  m.def("_residual", [](const std::string& system, const GridDomain& d, const Array& a, const std::string& sig) {
    const auto f = to_height(d, a);
    if (system == "minimal") return js(to_json(minimal_residual(f)));
    if (system == "maximal") return js(to_json(maximal_residual(f)));
    if (system == "divergence") return js(to_json(divergence_residual(f)));
    if (system == "closedness")
      return js(to_json(closedness_identities(f, sig == "split" ? Signature::split : Signature::euclidean)));
    throw Error(ErrorCode::InvalidArgument, "unknown system '" + system + "'");
  });

  m.def("_twin", [](bool forward, const GridDomain& d, const Array& a, std::pair<int, int> bp,
                    std::optional<double> tol) {
    const auto h = to_height(d, a);
    const auto p = forward ? twin_forward(h, node(bp), tol) : twin_backward(h, node(bp), tol);
    return py::make_tuple(from_fields(forward ? p.g.components : p.f.components), js(to_json(p.diagnostics, p.tol)));
  });

  m.def("_sl_lift", [](const GridDomain& d, const Array& a, std::pair<int, int> bp, std::optional<double> tol) {
    const auto L = sl_lift(to_height(d, a), node(bp), tol);
    return py::make_tuple(from_field(L.M), from_field(L.N), from_field(L.h), js(to_json(L)));
  });
  m.def(
      "graph_rotate",
      [](const GridDomain& d, const Array& F, double l1, double l2, int eps, const std::string& mode) {
        const auto md = mode == "reverse" ? RotationMode::reverse : RotationMode::standard;
        return from_field(graph_rotate(to_scalar(d, F), {l1, l2, eps, 0.0}, md));
      },
      py::arg("grid"), py::arg("F"), py::arg("lambda1"), py::arg("lambda2"), py::arg("epsilon") = 1,
      py::arg("mode") = "standard");
  m.def("sl_params_from_theta", [](double theta, int eps, const std::string& mode) {
    const auto p = SLParams::from_theta(theta, eps, mode == "reverse" ? RotationMode::reverse : RotationMode::standard);
    return py::make_tuple(p.lambda1, p.lambda2);
  });
  m.def("hessian_determinant", [](const GridDomain& d, const Array& h) {
    return from_field(hessian_determinant(to_scalar(d, h)));
  });
  m.def("_sl_residual", [](const GridDomain& d, const Array& h, double theta, bool split) {
    const auto f = to_scalar(d, h);
    return js(to_json(split ? split_sl_residual(f, theta) : sl_residual(f, theta)));
  });
  m.def("_detect_angle", [](const GridDomain& d, const Array& h, const std::string& mode) {
    return js(to_json(detect_angle(to_scalar(d, h), mode == "split" ? Signature::split : Signature::euclidean)));
  });

  m.def(
      "gauss_map", [](const GridDomain& d, const Array& a, bool alt) {
        const auto f = to_height(d, a);
        return from_projective(alt ? gauss_map_alt(f) : gauss_map(f));
      },
      py::arg("grid"), py::arg("f"), py::arg("alt") = false);
  m.def("quadric_residual", [](const GridDomain& d, const CArray& g) { return quadric_residual(to_projective(d, g)); });
  m.def("planarity_score", [](const GridDomain& d, const CArray& g) { return planarity_score(to_projective(d, g)); });
  m.def("_hyperplane_fit", [](const GridDomain& d, const CArray& g, int i, int j) {
    return js(to_json(hyperplane_fit(to_projective(d, g), i, j)));
  });
  m.def(
      "jorgens_gauss",
      [](const GridDomain& d, const Array& F, double tol) {
        const auto J = jorgens_gauss(to_scalar(d, F), tol);
        return py::make_tuple(from_projective(J.field), J.epsilon);
      },
      py::arg("grid"), py::arg("F"), py::arg("tol") = 1e-8);

  m.def("_build_chart", [](const GridDomain& d, const Array& a, std::pair<int, int> bp) {
    const auto c = build_chart(to_height(d, a), node(bp));
    py::dict out;
    out["M"] = from_field(c.M);
    out["N"] = from_field(c.N);
    out["xi1"] = from_field(c.xi1);
    out["xi2"] = from_field(c.xi2);
    out["J_psi"] = from_field(c.J_psi);
    out["conformal_factor"] = from_field(c.conformal_factor);
    return out;
  });
  m.def("_resample_to_chart", [](const GridDomain& d, const Array& a, std::pair<int, int> bp) {
    const auto f = to_height(d, a);
    const auto X = resample_to_chart(build_chart(f, node(bp)), f);
    return py::make_tuple(X.domain, from_fields(X.components), js(to_json(pullback_metric(X))));
  });
  m.def("_weierstrass", [](const GridDomain& d, const Array& a, std::pair<int, int> bp) {
    const auto f = to_height(d, a);
    return js(to_json(verify_weierstrass_twin(twin_forward(f, node(bp)), build_chart(f, node(bp)))));
  });

  m.def("_solve", [](bool minimal, const GridDomain& d, const Array& a, const py::dict& kw) {
    SolveOptions o;
    for (const auto& [k, v] : kw) {
      const auto key = k.cast<std::string>();
      if (key == "max_outer") o.max_outer = v.cast<int>();
      else if (key == "max_inner") o.max_inner = v.cast<int>();
      else if (key == "inner_tol") o.inner_tol = v.cast<double>();
      else if (key == "outer_tol") o.outer_tol = v.cast<double>();
      else if (key == "relaxation") o.relaxation = v.cast<double>();
      else if (key == "spacelike_margin") o.spacelike_margin = v.cast<double>();
      else throw Error(ErrorCode::InvalidArgument, "unknown solver option '" + key + "'");
    }
    o.validate();
    const auto b = to_height(d, a);
    const auto r = minimal ? solve_minimal(b, o) : solve_maximal(b, o);
    return py::make_tuple(from_fields(r.solution.components), js(to_json(r)));
  });

  m.def("_verify_all", [](const std::string& name, const Params& params, const GridDomain& d) {
    return js(to_json(verify_all(name, params, d)));
  });
}
