#include "twinsurf/report.hpp"

#include <cmath>
#include <cstdio>

namespace twinsurf {

namespace {

void write(std::string& out, const Json& j, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float:
      out += std::isfinite(j.get<double>()) ? format_double(j.get<double>()) : "null";
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(out, v, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

Json to_json(const GridDomain& d) {
  return Json{{"nx", d.nx}, {"ny", d.ny}, {"dx", d.dx}, {"dy", d.dy}, {"x0", d.x0}, {"y0", d.y0}};
}

Json to_json(const NodeIndex& p) { return Json::array({p.i, p.j}); }

Json to_json(const Diagnostic& d) {
  Json nodes = Json::array();
  for (const auto& p : d.nodes) nodes.push_back(to_json(p));
  return Json{{"code", std::string(to_string(d.code))}, {"message", d.message}, {"count", d.nodes.size()}, {"nodes", nodes}};
}

Json to_json(const Error& e) {
  Json nodes = Json::array();
  for (const auto& p : e.nodes()) nodes.push_back(to_json(p));
  return Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"nodes", nodes}};
}

Json to_json(const ResidualReport& r) {
  Json diags = Json::array();
  for (const auto& d : r.diagnostics) diags.push_back(to_json(d));
  Json per = Json::array();
  for (std::size_t c = 0; c < r.raw.size(); ++c)
    per.push_back({{"raw_max_abs", max_abs_interior(r.raw[c])}, {"scaled_max_abs", max_abs_interior(r.scaled[c])}});
  const GridDomain& g = r.grid;
  return Json{{"op", r.op},
              {"signature", to_string(r.signature)},
              {"max_abs", r.max_abs()},
              {"l2", r.l2()},
              {"normalization", to_string(r.normalization)},
              {"excluded_boundary", true},
              {"grid", {{"nx", g.nx}, {"ny", g.ny}, {"dx", g.dx}, {"dy", g.dy}}},
              {"raw", {{"max_abs", r.raw_max_abs}, {"l2", r.raw_l2}}},
              {"scaled", {{"max_abs", r.scaled_max_abs}, {"l2", r.scaled_l2}}},
              {"components", per},
              {"diagnostics", diags}};
}

Json to_json(const TwinDiagnostics& t, double tol) {
  return Json{{"c1_residual", t.c1}, {"c2_residual", t.c2},      {"c3_residual", t.c3},
              {"c4_residual", t.c4}, {"involution_residual", t.involution}, {"tol", tol}};
}

Json to_json(const SLLift& s) {
  return Json{{"basepoint", to_json(s.basepoint)},
              {"gradient_symmetry_residual", s.gradient_symmetry_residual},
              {"hessian_det_residual", s.hessian_det_residual},
              {"area_residual", s.area_residual}};
}

Json to_json(const AngleEstimate& a) {
  return Json{{"theta", a.theta}, {"constancy_residual", a.constancy_residual}, {"mean_quotient", a.mean_quotient},
              {"quotient", a.inverted ? "(1-det)/lap" : "lap/(1-det)"}};
}

Json to_json(const HyperplaneFit& f) {
  return Json{{"i", f.i},
              {"j", f.j},
              {"lambda", {{"re", f.lambda.real()}, {"im", f.lambda.imag()}}},
              {"residual", f.residual},
              {"is_nonreal", f.is_nonreal},
              {"valid_fraction", f.valid_fraction}};
}

Json to_json(const PullbackMetric& p) {
  return Json{{"max_g11", p.max_g11}, {"max_abs_g12", p.max_abs_g12}, {"max_abs_g11_minus_g22", p.max_abs_g11_g22}};
}

Json to_json(const NullCurveField& n) {
  return Json{{"grid", to_json(n.domain)},
              {"holomorphy_residual", n.holomorphy_residual},
              {"nullity_residual", n.nullity_residual}};
}

Json to_json(const WeierstrassReport& w) {
  Json rel = Json::array();
  for (const auto& r : w.relations) rel.push_back({{"relation", r.name}, {"residual", r.residual}});
  return Json{{"grid", to_json(w.target)},
              {"relations", rel},
              {"max_residual", w.max_residual},
              {"nullity_minimal", w.nullity_minimal},
              {"nullity_maximal", w.nullity_maximal}};
}

Json to_json(const SolveResult& s) {
  Json hist = Json::array();
  for (std::size_t k = 0; k < s.update_history.size(); ++k)
    hist.push_back({{"outer", k + 1}, {"update", s.update_history[k]}, {"inner_sweeps", s.inner_sweeps[k]},
                    {"damping", s.damping[k]}});
  return Json{{"converged", s.converged},
              {"outer_iterations", s.outer_iterations},
              {"initial_scale", s.initial_scale},
              {"history", hist}};
}

}  // namespace twinsurf
