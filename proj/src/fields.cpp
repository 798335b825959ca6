#include "twinsurf/fields.hpp"

#include <algorithm>
#include <cmath>

#include "twinsurf/parallel.hpp"

namespace twinsurf {

namespace {

// Derivative along a strided line of `n` samples. On lines of six or more
// samples the boundary value is the cubic extrapolation of the four nearest
// central differences, which keeps the O(h^2) error term smooth up to the
// edge; shorter lines fall back to the three- and four-point stencils.
inline double d1(const double* f, std::ptrdiff_t s, int k, int n, double h) {
  if (k == 0) {
    if (n >= 6) return (-4.0 * f[0] + 6.0 * f[s] - 5.0 * f[3 * s] + 4.0 * f[4 * s] - f[5 * s]) / (2.0 * h);
    return (-3.0 * f[0] + 4.0 * f[s] - f[2 * s]) / (2.0 * h);
  }
  if (k == n - 1) {
    if (n >= 6) return (4.0 * f[0] - 6.0 * f[-s] + 5.0 * f[-3 * s] - 4.0 * f[-4 * s] + f[-5 * s]) / (2.0 * h);
    return (3.0 * f[0] - 4.0 * f[-s] + f[-2 * s]) / (2.0 * h);
  }
  return (f[s] - f[-s]) / (2.0 * h);
}

inline double d2(const double* f, std::ptrdiff_t s, int k, int n, double h) {
  if (k == 0 || k == n - 1) {
    const std::ptrdiff_t t = k == 0 ? s : -s;
    if (n >= 6)
      return (4.0 * f[0] - 14.0 * f[t] + 20.0 * f[2 * t] - 15.0 * f[3 * t] + 6.0 * f[4 * t] - f[5 * t]) / (h * h);
    return (2.0 * f[0] - 5.0 * f[t] + 4.0 * f[2 * t] - f[3 * t]) / (h * h);
  }
  return (f[s] - 2.0 * f[0] + f[-s]) / (h * h);
}

template <class Stencil>
ScalarField along_x(const ScalarField& f, Stencil stencil) {
  const auto& d = f.domain;
  ScalarField out(d);
  for_each_row(d.ny, [&](int j) {
    for (int i = 0; i < d.nx; ++i) out(i, j) = stencil(&f.values[d.index(i, j)], 1, i, d.nx, d.dx);
  });
  return out;
}

template <class Stencil>
ScalarField along_y(const ScalarField& f, Stencil stencil) {
  const auto& d = f.domain;
  ScalarField out(d);
  for_each_row(d.ny, [&](int j) {
    for (int i = 0; i < d.nx; ++i) out(i, j) = stencil(&f.values[d.index(i, j)], d.nx, j, d.ny, d.dy);
  });
  return out;
}

}  // namespace

ScalarField partial_x(const ScalarField& f) { return along_x(f, d1); }
ScalarField partial_y(const ScalarField& f) { return along_y(f, d1); }
ScalarField partial_xx(const ScalarField& f) { return along_x(f, d2); }
ScalarField partial_yy(const ScalarField& f) { return along_y(f, d2); }
ScalarField partial_xy(const ScalarField& f) { return partial_y(partial_x(f)); }

HessianField hessian(const ScalarField& f) { return {partial_xx(f), partial_xy(f), partial_yy(f)}; }

std::vector<GradientField> gradients(const HeightMap& h) {
  if (h.analytic) return *h.analytic;
  std::vector<GradientField> out;
  out.reserve(h.components.size());
  for (const auto& c : h.components) out.push_back({partial_x(c), partial_y(c)});
  return out;
}

const char* to_string(Signature s) { return s == Signature::euclidean ? "euclidean" : "split"; }

MetricData metric_from_gradients(const GridDomain& d, const std::vector<GradientField>& grads, Signature signature) {
  MetricData m;
  m.signature = signature;
  m.E = ScalarField(d);
  m.F = ScalarField(d);
  m.G = ScalarField(d);
  m.omega = ScalarField(d);
  m.valid.assign(d.size(), 1);
  const double sign = signature == Signature::euclidean ? 1.0 : -1.0;
  for_each_row(d.ny, [&](int j) {
    for (int i = 0; i < d.nx; ++i) {
      const std::size_t k = d.index(i, j);
      double aa = 0.0, ab = 0.0, bb = 0.0;
      for (const auto& g : grads) {
        const double a = g.x.values[k], b = g.y.values[k];
        aa += a * a;
        ab += a * b;
        bb += b * b;
      }
      const double E = 1.0 + sign * aa, F = sign * ab, G = 1.0 + sign * bb;
      const double det = E * G - F * F;
      m.E.values[k] = E;
      m.F.values[k] = F;
      m.G.values[k] = G;
      if (det > 0.0 && E > 0.0) {
        m.omega.values[k] = std::sqrt(det);
      } else {
        m.valid[k] = 0;
      }
    }
  });
  auto bad = collect_nodes(d, [&](std::size_t k) { return !m.valid[k]; });
  if (!bad.empty()) {
    m.diagnostic = Diagnostic{ErrorCode::SplitNotSpacelike, std::move(bad), "induced metric is not positive definite"};
  }
  return m;
}

MetricData first_fundamental_form(const HeightMap& h, Signature signature) {
  h.validate();
  return metric_from_gradients(h.domain, gradients(h), signature);
}

JacobianData jacobian_from_gradients(const GridDomain& d, const std::vector<GradientField>& grads) {
  JacobianData out;
  const int n = static_cast<int>(grads.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      PairJacobian p{a + 1, b + 1, ScalarField(d)};
      for (std::size_t k = 0; k < d.size(); ++k)
        p.J.values[k] = grads[a].x.values[k] * grads[b].y.values[k] - grads[b].x.values[k] * grads[a].y.values[k];
      out.pairs.push_back(std::move(p));
    }
  }
  out.normJ = ScalarField(d);
  out.theta = ScalarField(d);
  for (std::size_t k = 0; k < d.size(); ++k) {
    double s = 0.0;
    for (const auto& p : out.pairs) s += p.J.values[k] * p.J.values[k];
    const double norm = std::sqrt(s);
    out.normJ.values[k] = norm;
    out.theta.values[k] = std::acos(std::min(norm, 1.0));
  }
  auto bad = collect_nodes(d, [&](std::size_t k) { return out.normJ.values[k] >= 1.0; });
  if (!bad.empty()) {
    out.diagnostic = Diagnostic{ErrorCode::AreaAngleViolation, std::move(bad), "Jacobian norm reaches 1"};
  }
  return out;
}

JacobianData jacobian_data(const HeightMap& h) {
  h.validate();
  return jacobian_from_gradients(h.domain, gradients(h));
}

LPathIntegrals l_path_integrals(const ScalarField& P, const ScalarField& Q, NodeIndex bp) {
  const auto& d = P.domain;
  if (!(Q.domain == d)) throw Error(ErrorCode::InvalidArgument, "P and Q must share a domain");
  if (!d.contains(bp)) throw Error(ErrorCode::InvalidArgument, "basepoint outside the grid", {bp});

  // row_int(i, j): integral of P along row j from x(bp.i) to x(i).
  // col_int(i, j): integral of Q along column i from y(bp.j) to y(j).
  ScalarField row_int(d), col_int(d);
  for_each_row(d.ny, [&](int j) {
    for (int i = bp.i + 1; i < d.nx; ++i) row_int(i, j) = row_int(i - 1, j) + 0.5 * d.dx * (P(i - 1, j) + P(i, j));
    for (int i = bp.i - 1; i >= 0; --i) row_int(i, j) = row_int(i + 1, j) - 0.5 * d.dx * (P(i, j) + P(i + 1, j));
  });
  for_each_row(d.nx, [&](int i) {
    for (int j = bp.j + 1; j < d.ny; ++j) col_int(i, j) = col_int(i, j - 1) + 0.5 * d.dy * (Q(i, j - 1) + Q(i, j));
    for (int j = bp.j - 1; j >= 0; --j) col_int(i, j) = col_int(i, j + 1) - 0.5 * d.dy * (Q(i, j) + Q(i, j + 1));
  });

  LPathIntegrals out{ScalarField(d), ScalarField(d)};
  for_each_row(d.ny, [&](int j) {
    for (int i = 0; i < d.nx; ++i) {
      out.x_first(i, j) = row_int(i, bp.j) + col_int(i, j);
      out.y_first(i, j) = col_int(bp.i, j) + row_int(i, j);
    }
  });
  return out;
}

PotentialResult integrate_exact_form(const ScalarField& P, const ScalarField& Q, NodeIndex basepoint,
                                     std::optional<double> tol) {
  const auto& d = P.domain;
  d.validate();
  auto paths = l_path_integrals(P, Q, basepoint);

  PotentialResult r;
  r.basepoint = basepoint;
  r.potential = ScalarField(d);
  for (std::size_t k = 0; k < d.size(); ++k)
    r.potential.values[k] = 0.5 * (paths.x_first.values[k] + paths.y_first.values[k]);

  const ScalarField Py = partial_y(P);
  const ScalarField Qx = partial_x(Q);
  r.closedness_residual = ScalarField(d);
  for (std::size_t k = 0; k < d.size(); ++k) r.closedness_residual.values[k] = std::abs(Py.values[k] - Qx.values[k]);
  r.max_closedness = max_abs_interior(r.closedness_residual);

  if (tol && r.max_closedness > *tol) {
    auto bad = collect_nodes(d, [&](std::size_t k) {
      const int i = static_cast<int>(k % d.nx), j = static_cast<int>(k / d.nx);
      return d.interior(i, j) && r.closedness_residual.values[k] > *tol;
    });
    throw Error(ErrorCode::NotClosed, "1-form is not closed within tolerance", std::move(bad));
  }
  return r;
}

}  // namespace twinsurf
