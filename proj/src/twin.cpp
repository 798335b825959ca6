#include "twinsurf/twin.hpp"

#include <algorithm>
#include <cmath>

#include "twinsurf/systems.hpp"

namespace twinsurf {

namespace {

struct OneForms {
  std::vector<ScalarField> P, Q;
};

// Twin gradient fields. Forward maps (a, b) of f to the gradient of g,
// backward maps the gradient of g to that of f.
OneForms forward_forms(const GridDomain& d, const std::vector<GradientField>& grads, const MetricData& m) {
  OneForms out;
  for (const auto& g : grads) {
    ScalarField P(d), Q(d);
    for (std::size_t k = 0; k < d.size(); ++k) {
      const double w = m.omega.values[k];
      const double e = m.E.values[k] / w, f = m.F.values[k] / w, gg = m.G.values[k] / w;
      const double a = g.x.values[k], b = g.y.values[k];
      P.values[k] = -e * b + f * a;
      Q.values[k] = gg * a - f * b;
    }
    out.P.push_back(std::move(P));
    out.Q.push_back(std::move(Q));
  }
  return out;
}

OneForms backward_forms(const GridDomain& d, const std::vector<GradientField>& grads, const MetricData& m) {
  OneForms out;
  for (const auto& g : grads) {
    ScalarField P(d), Q(d);
    for (std::size_t k = 0; k < d.size(); ++k) {
      const double w = m.omega.values[k];
      if (!(w > 0.0)) continue;
      const double e = m.E.values[k] / w, f = m.F.values[k] / w, gg = m.G.values[k] / w;
      const double a = g.x.values[k], b = g.y.values[k];
      P.values[k] = e * b - f * a;
      Q.values[k] = -gg * a + f * b;
    }
    out.P.push_back(std::move(P));
    out.Q.push_back(std::move(Q));
  }
  return out;
}

HeightMap integrate_forms(const GridDomain& d, const OneForms& forms, NodeIndex bp) {
  HeightMap out(d, static_cast<int>(forms.P.size()));
  for (std::size_t c = 0; c < forms.P.size(); ++c)
    out.components[c] = integrate_exact_form(forms.P[c], forms.Q[c], bp).potential;
  return out;
}

std::vector<HessianField> hessians_of(const HeightMap& h) {
  std::vector<HessianField> out;
  for (const auto& c : h.components) out.push_back(hessian(c));
  return out;
}

// Scaled closedness |P_y - Q_x| of each form; throws NOT_CLOSED above tol.
void require_closed(const OneForms& forms, const MetricData& m, const HeightMap& h, double tol) {
  const auto& d = h.domain;
  const ScalarField scale = residual_scale(m, hessians_of(h));
  std::vector<unsigned char> bad(d.size(), 0);
  bool any = false;
  for (std::size_t c = 0; c < forms.P.size(); ++c) {
    const ScalarField Py = partial_y(forms.P[c]), Qx = partial_x(forms.Q[c]);
    for (int j = 1; j < d.ny - 1; ++j) {
      for (int i = 1; i < d.nx - 1; ++i) {
        const std::size_t k = d.index(i, j);
        if (!m.valid[k]) continue;
        if (std::abs(Py.values[k] - Qx.values[k]) / scale.values[k] > tol) bad[k] = 1, any = true;
      }
    }
  }
  if (any)
    throw Error(ErrorCode::NotClosed, "twin gradient field is not closed within tolerance",
                collect_nodes(d, [&](std::size_t k) { return bad[k] != 0; }));
}

void require_small(const ResidualReport& r, double tol, ErrorCode code, const char* what) {
  if (r.max_abs() <= tol) return;
  const auto& d = r.grid;
  auto nodes = collect_nodes(d, [&](std::size_t k) {
    const int i = static_cast<int>(k % d.nx), j = static_cast<int>(k / d.nx);
    if (!d.interior(i, j)) return false;
    for (const auto& s : r.scaled)
      if (std::abs(s.values[k]) > tol) return true;
    return false;
  });
  throw Error(code, what, std::move(nodes));
}

double max_interior_diff(const ScalarField& a, const ScalarField& b, const std::vector<unsigned char>& mask = {}) {
  ScalarField diff(a.domain);
  for (std::size_t k = 0; k < diff.values.size(); ++k) diff.values[k] = a.values[k] - b.values[k];
  return max_abs_interior(diff, mask);
}

ScalarField anchored(const ScalarField& f, NodeIndex bp) {
  ScalarField out = f;
  const double c = f(bp.i, bp.j);
  for (double& v : out.values) v -= c;
  return out;
}

TwinPair assemble(HeightMap f, HeightMap g, NodeIndex bp, double tol, bool from_minimal) {
  TwinPair p;
  p.from_minimal = from_minimal;
  p.metric_f = first_fundamental_form(f, Signature::euclidean);
  p.metric_g = first_fundamental_form(g, Signature::split);
  p.jac_f = jacobian_data(f);
  p.jac_g = jacobian_data(g);
  p.f = std::move(f);
  p.g = std::move(g);
  p.basepoint = bp;
  p.tol = tol;
  p.diagnostics = verify_twin(p);
  return p;
}

}  // namespace

double default_twin_tol(const GridDomain& d) {
  const double h = d.spacing();
  return 50.0 * h * h;
}

HeightMap integrate_twin_forward(const HeightMap& f, NodeIndex bp) {
  f.validate();
  const auto grads = gradients(f);
  const auto m = metric_from_gradients(f.domain, grads, Signature::euclidean);
  return integrate_forms(f.domain, forward_forms(f.domain, grads, m), bp);
}

HeightMap integrate_twin_backward(const HeightMap& g, NodeIndex bp) {
  g.validate();
  const auto grads = gradients(g);
  const auto m = metric_from_gradients(g.domain, grads, Signature::split);
  return integrate_forms(g.domain, backward_forms(g.domain, grads, m), bp);
}

TwinPair twin_forward(const HeightMap& f, NodeIndex bp, std::optional<double> tol) {
  f.validate();
  const auto& d = f.domain;
  if (!d.contains(bp)) throw Error(ErrorCode::InvalidArgument, "basepoint outside the grid", {bp});
  const double t = tol.value_or(default_twin_tol(d));

  const auto grads = gradients(f);
  const auto jac = jacobian_from_gradients(d, grads);
  if (jac.diagnostic) raise(*jac.diagnostic);
  const auto m = metric_from_gradients(d, grads, Signature::euclidean);
  const auto forms = forward_forms(d, grads, m);
  require_closed(forms, m, f, t);
  require_small(minimal_residual(f), t, ErrorCode::NotMinimal, "input is not minimal within tolerance");

  HeightMap g = integrate_forms(d, forms, bp);
  auto pair = assemble(f, std::move(g), bp, t, true);
  if (pair.metric_g.diagnostic)
    throw Error(ErrorCode::NotSpacelike, "twin is not spacelike", pair.metric_g.diagnostic->nodes);
  return pair;
}

TwinPair twin_backward(const HeightMap& g, NodeIndex bp, std::optional<double> tol) {
  g.validate();
  const auto& d = g.domain;
  if (!d.contains(bp)) throw Error(ErrorCode::InvalidArgument, "basepoint outside the grid", {bp});
  const double t = tol.value_or(default_twin_tol(d));

  const auto grads = gradients(g);
  const auto m = metric_from_gradients(d, grads, Signature::split);
  if (m.diagnostic) throw Error(ErrorCode::NotSpacelike, "input is not spacelike", m.diagnostic->nodes);
  const auto jac = jacobian_from_gradients(d, grads);
  if (jac.diagnostic) raise(*jac.diagnostic);
  const auto forms = backward_forms(d, grads, m);
  require_closed(forms, m, g, t);
  require_small(maximal_residual(g), t, ErrorCode::NotMaximal, "input is not maximal within tolerance");

  HeightMap f = integrate_forms(d, forms, bp);
  return assemble(std::move(f), g, bp, t, false);
}

TwinDiagnostics verify_twin(const TwinPair& p) {
  const auto& d = p.f.domain;
  const auto gf = gradients(p.f), gg = gradients(p.g);
  const auto mf = metric_from_gradients(d, gf, Signature::euclidean);
  const auto mg = metric_from_gradients(d, gg, Signature::split);
  const auto jf = jacobian_from_gradients(d, gf), jg = jacobian_from_gradients(d, gg);
  const auto& mask = mg.valid;

  TwinDiagnostics out;
  const auto forms = forward_forms(d, gf, mf);
  for (std::size_t c = 0; c < gg.size(); ++c) {
    out.c1 = std::max({out.c1, max_interior_diff(gg[c].x, forms.P[c], mask), max_interior_diff(gg[c].y, forms.Q[c], mask)});
  }
  for (std::size_t q = 0; q < jf.pairs.size(); ++q)
    out.c2 = std::max(out.c2, max_interior_diff(jf.pairs[q].J, jg.pairs[q].J, mask));

  ScalarField c3(d), e(d), f(d), g(d);
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (!mask[k]) continue;
    const double w = mf.omega.values[k], wh = mg.omega.values[k];
    const double n2 = jf.normJ.values[k] * jf.normJ.values[k];
    c3.values[k] = wh * w - (1.0 - n2);
    e.values[k] = mf.E.values[k] / w - mg.E.values[k] / wh;
    f.values[k] = mf.F.values[k] / w - mg.F.values[k] / wh;
    g.values[k] = mf.G.values[k] / w - mg.G.values[k] / wh;
  }
  out.c3 = max_abs_interior(c3, mask);
  out.c4 = std::max({max_abs_interior(e, mask), max_abs_interior(f, mask), max_abs_interior(g, mask)});

  // Map the constructed side back and compare with the side that was given.
  const HeightMap& given = p.from_minimal ? p.f : p.g;
  const HeightMap back = p.from_minimal ? integrate_twin_backward(p.g, p.basepoint)
                                        : integrate_twin_forward(p.f, p.basepoint);
  for (int c = 0; c < given.n(); ++c) {
    out.involution = std::max(out.involution, max_interior_diff(anchored(given.components[c], p.basepoint),
                                                                back.components[c]));
  }
  return out;
}

}  // namespace twinsurf
