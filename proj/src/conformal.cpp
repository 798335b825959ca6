#include "twinsurf/conformal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>

#include "twinsurf/parallel.hpp"
#include "twinsurf/slag.hpp"
#include "twinsurf/systems.hpp"

namespace twinsurf {

namespace {

constexpr int kNewtonIterations = 50;
constexpr double kNewtonTol = 1e-12;

struct Stencil1D {
  int first = 0;  // index of the leftmost of four nodes
  std::array<double, 4> w{}, dw{};
};

// Cubic Lagrange weights on nodes first..first+3 and their derivatives
// with respect to the coordinate.
Stencil1D stencil(double origin, double spacing, int count, double x) {
  const double s = (x - origin) / spacing;
  const int cell = std::clamp(static_cast<int>(std::floor(s)), 1, count - 3);
  const double t = s - cell;
  Stencil1D st;
  st.first = cell - 1;
  st.w = {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
          -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
  st.dw = {-(3.0 * t * t - 6.0 * t + 2.0) / 6.0, (3.0 * t * t - 4.0 * t - 1.0) / 2.0,
           -(3.0 * t * t - 2.0 * t - 2.0) / 2.0, (3.0 * t * t - 1.0) / 6.0};
  for (double& v : st.dw) v /= spacing;
  return st;
}

struct Sample {
  double v = 0.0, dx = 0.0, dy = 0.0;
};

Sample sample(const ScalarField& f, const Stencil1D& sx, const Stencil1D& sy) {
  Sample out;
  for (int b = 0; b < 4; ++b) {
    double row = 0.0, drow = 0.0;
    for (int a = 0; a < 4; ++a) {
      const double v = f(sx.first + a, sy.first + b);
      row += sx.w[a] * v;
      drow += sx.dw[a] * v;
    }
    out.v += sy.w[b] * row;
    out.dx += sy.w[b] * drow;
    out.dy += sy.dw[b] * row;
  }
  return out;
}

// Nearest forward-image node via a uniform bucket grid over the image.
class NearestNode {
 public:
  explicit NearestNode(const ConformalChart& c) : c_(c), d_(c.domain) {
    lo1_ = *std::min_element(c.xi1.values.begin(), c.xi1.values.end());
    lo2_ = *std::min_element(c.xi2.values.begin(), c.xi2.values.end());
    const double hi1 = *std::max_element(c.xi1.values.begin(), c.xi1.values.end());
    const double hi2 = *std::max_element(c.xi2.values.begin(), c.xi2.values.end());
    nb1_ = d_.nx;
    nb2_ = d_.ny;
    w1_ = std::max((hi1 - lo1_) / nb1_, 1e-300);
    w2_ = std::max((hi2 - lo2_) / nb2_, 1e-300);
    buckets_.resize(static_cast<std::size_t>(nb1_) * nb2_);
    for (std::size_t k = 0; k < d_.size(); ++k) buckets_[bucket_of(c.xi1.values[k], c.xi2.values[k])].push_back(k);
  }

  std::size_t find(double q1, double q2) const {
    const int b1 = clamp1(q1), b2 = clamp2(q2);
    std::size_t best = 0;
    double best_d = INFINITY;
    for (int r = 0; r < std::max(nb1_, nb2_); ++r) {
      for (int j = b2 - r; j <= b2 + r; ++j) {
        if (j < 0 || j >= nb2_) continue;
        for (int i = b1 - r; i <= b1 + r; ++i) {
          if (i < 0 || i >= nb1_) continue;
          if (std::max(std::abs(i - b1), std::abs(j - b2)) != r) continue;
          for (std::size_t k : buckets_[static_cast<std::size_t>(j) * nb1_ + i]) {
            const double e1 = c_.xi1.values[k] - q1, e2 = c_.xi2.values[k] - q2;
            const double dist = e1 * e1 + e2 * e2;
            if (dist < best_d || (dist == best_d && k < best)) best_d = dist, best = k;
          }
        }
      }
      // Every unvisited bucket is at least r cells away along one axis.
      const double reach = r * std::min(w1_, w2_);
      if (std::isfinite(best_d) && reach * reach >= best_d) break;
    }
    return best;
  }

 private:
  int clamp1(double v) const { return std::clamp(static_cast<int>(std::floor((v - lo1_) / w1_)), 0, nb1_ - 1); }
  int clamp2(double v) const { return std::clamp(static_cast<int>(std::floor((v - lo2_) / w2_)), 0, nb2_ - 1); }
  std::size_t bucket_of(double a, double b) const { return static_cast<std::size_t>(clamp2(b)) * nb1_ + clamp1(a); }

  const ConformalChart& c_;
  GridDomain d_;
  double lo1_ = 0.0, lo2_ = 0.0, w1_ = 1.0, w2_ = 1.0;
  int nb1_ = 1, nb2_ = 1;
  std::vector<std::vector<std::size_t>> buckets_;
};

ScalarField take(const ComplexField& f, bool imag) {
  ScalarField out(f.domain);
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = imag ? f.values[k].imag() : f.values[k].real();
  return out;
}

double max_interior(const GridDomain& d, const std::vector<double>& v) {
  double m = 0.0;
  for (int j = 1; j < d.ny - 1; ++j)
    for (int i = 1; i < d.nx - 1; ++i) m = std::max(m, v[d.index(i, j)]);
  return m;
}

}  // namespace

ConformalChart build_chart(const HeightMap& f, NodeIndex bp, std::optional<double> tol) {
  f.validate();
  const auto& d = f.domain;
  if (!d.contains(bp)) throw Error(ErrorCode::InvalidArgument, "basepoint outside the grid", {bp});
  const double t = tol.value_or(50.0 * d.spacing() * d.spacing());
  if (minimal_residual(f).max_abs() > t) throw Error(ErrorCode::NotMinimal, "input is not minimal within tolerance");
  if (closedness_identities(f, Signature::euclidean).max_abs() > t)
    throw Error(ErrorCode::NotClosed, "chart forms are not closed within tolerance");

  auto [M, N] = lift_potentials(f, bp);
  const auto m = first_fundamental_form(f, Signature::euclidean);
  ConformalChart c;
  c.domain = d;
  c.basepoint = bp;
  c.M = std::move(M.potential);
  c.N = std::move(N.potential);
  c.xi1 = ScalarField(d);
  c.xi2 = ScalarField(d);
  c.J_psi = ScalarField(d);
  c.conformal_factor = ScalarField(d);
  for (int j = 0; j < d.ny; ++j) {
    for (int i = 0; i < d.nx; ++i) {
      const std::size_t k = d.index(i, j);
      const double w = m.omega.values[k];
      c.xi1.values[k] = d.x(i) + c.M.values[k];
      c.xi2.values[k] = d.y(j) + c.N.values[k];
      c.J_psi.values[k] = 2.0 + (m.E.values[k] + m.G.values[k]) / w;
      c.conformal_factor.values[k] = w / c.J_psi.values[k];
    }
  }
  auto bad = collect_nodes(d, [&](std::size_t k) { return !(c.J_psi.values[k] > 2.0 - 1e-9); });
  if (!bad.empty()) throw Error(ErrorCode::JacobianBoundViolation, "chart Jacobian does not exceed 2", std::move(bad));
  return c;
}

GridDomain auto_target(const ConformalChart& c) {
  const auto& d = c.domain;
  double a1 = -INFINITY, b1 = INFINITY, a2 = -INFINITY, b2 = INFINITY;
  for (int j = 1; j < d.ny - 1; ++j) {
    a1 = std::max(a1, c.xi1(1, j));
    b1 = std::min(b1, c.xi1(d.nx - 2, j));
  }
  for (int i = 1; i < d.nx - 1; ++i) {
    a2 = std::max(a2, c.xi2(i, 1));
    b2 = std::min(b2, c.xi2(i, d.ny - 2));
  }
  const double s1 = 2.0 * (b1 - a1) / (d.nx - 1), s2 = 2.0 * (b2 - a2) / (d.ny - 1);
  a1 += s1;
  b1 -= s1;
  a2 += s2;
  b2 -= s2;
  if (!(b1 > a1) || !(b2 > a2)) throw Error(ErrorCode::TargetOutsideImage, "chart image contains no target rectangle");
  return GridDomain::span(a1, a2, b1, b2, d.nx, d.ny);
}

double interpolate(const ScalarField& f, double x, double y) {
  const auto& d = f.domain;
  return sample(f, stencil(d.x0, d.dx, d.nx, x), stencil(d.y0, d.dy, d.ny, y)).v;
}

ChartInverse invert_chart(const ConformalChart& c, std::optional<GridDomain> target) {
  const auto& d = c.domain;
  ChartInverse inv;
  inv.target = target ? *target : auto_target(c);
  inv.target.validate();
  const auto& t = inv.target;
  inv.x.assign(t.size(), 0.0);
  inv.y.assign(t.size(), 0.0);
  const NearestNode nearest(c);

  const double xlo = d.x0, xhi = d.x1(), ylo = d.y0, yhi = d.y1();
  const double ilo = d.x(1), ihi = d.x(d.nx - 2), jlo = d.y(1), jhi = d.y(d.ny - 2);
  auto eval = [&](double x, double y, Sample& s1, Sample& s2) {
    const auto sx = stencil(d.x0, d.dx, d.nx, x), sy = stencil(d.y0, d.dy, d.ny, y);
    s1 = sample(c.xi1, sx, sy);
    s2 = sample(c.xi2, sx, sy);
  };

  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(t.ny));
  for_each_row(t.ny, [&](int j) {
    try {
      for (int i = 0; i < t.nx; ++i) {
        const double q1 = t.x(i), q2 = t.y(j);
        const double scale = kNewtonTol * std::max({1.0, std::abs(q1), std::abs(q2)});
        const std::size_t seed = nearest.find(q1, q2);
        double x = d.x(static_cast<int>(seed % d.nx)), y = d.y(static_cast<int>(seed / d.nx));
        Sample s1, s2;
        eval(x, y, s1, s2);
        double r1 = s1.v - q1, r2 = s2.v - q2, res = std::hypot(r1, r2);
        bool ok = res <= scale, pinned = false;
        for (int it = 0; it < kNewtonIterations && !ok; ++it) {
          const double det = s1.dx * s2.dy - s1.dy * s2.dx;
          if (!(std::abs(det) > 0.0)) break;
          const double sx = -(s2.dy * r1 - s1.dy * r2) / det, sy = -(-s2.dx * r1 + s1.dx * r2) / det;
          double step = 1.0;
          for (int damp = 0; damp < 30; ++damp, step *= 0.5) {
            const double nx = std::clamp(x + step * sx, xlo, xhi), ny = std::clamp(y + step * sy, ylo, yhi);
            Sample n1, n2;
            eval(nx, ny, n1, n2);
            const double nr1 = n1.v - q1, nr2 = n2.v - q2, nres = std::hypot(nr1, nr2);
            if (nres < res || damp == 29) {
              pinned = nx == xlo || nx == xhi || ny == ylo || ny == yhi;
              x = nx, y = ny, s1 = n1, s2 = n2, r1 = nr1, r2 = nr2, res = nres;
              break;
            }
          }
          ok = res <= scale;
        }
        if (!ok && pinned)
          throw Error(ErrorCode::TargetOutsideImage, "target node has no preimage in the chart grid", {{i, j}});
        if (!ok) throw Error(ErrorCode::NewtonDiverged, "chart inversion did not converge", {{i, j}});
        if (x < ilo || x > ihi || y < jlo || y > jhi)
          throw Error(ErrorCode::TargetOutsideImage, "preimage leaves the interior of the chart grid", {{i, j}});
        inv.x[t.index(i, j)] = x;
        inv.y[t.index(i, j)] = y;
      }
    } catch (...) {
      failures[j] = std::current_exception();
    }
  });
  for (auto& e : failures)
    if (e) std::rethrow_exception(e);
  return inv;
}

HeightMap resample(const ChartInverse& inv, const HeightMap& h) {
  h.validate();
  const auto& t = inv.target;
  const auto& d = h.domain;
  HeightMap X(t, h.n() + 2);
  for_each_row(t.ny, [&](int j) {
    for (int i = 0; i < t.nx; ++i) {
      const std::size_t k = t.index(i, j);
      const double x = inv.x[k], y = inv.y[k];
      X.components[0].values[k] = x;
      X.components[1].values[k] = y;
      const auto sx = stencil(d.x0, d.dx, d.nx, x), sy = stencil(d.y0, d.dy, d.ny, y);
      for (int c = 0; c < h.n(); ++c) X.components[c + 2].values[k] = sample(h.components[c], sx, sy).v;
    }
  });
  return X;
}

HeightMap resample_to_chart(const ConformalChart& chart, const HeightMap& h, std::optional<GridDomain> target) {
  if (!(chart.domain == h.domain)) throw Error(ErrorCode::InvalidArgument, "height map and chart grids differ");
  return resample(invert_chart(chart, target), h);
}

PullbackMetric pullback_metric(const HeightMap& X) {
  X.validate();
  const auto& d = X.domain;
  PullbackMetric p{ScalarField(d), ScalarField(d), ScalarField(d)};
  for (const auto& c : X.components) {
    const ScalarField a = partial_x(c), b = partial_y(c);
    for (std::size_t k = 0; k < d.size(); ++k) {
      p.g11.values[k] += a.values[k] * a.values[k];
      p.g12.values[k] += a.values[k] * b.values[k];
      p.g22.values[k] += b.values[k] * b.values[k];
    }
  }
  ScalarField diff(d);
  for (std::size_t k = 0; k < d.size(); ++k) diff.values[k] = p.g11.values[k] - p.g22.values[k];
  p.max_g11 = max_abs_interior(p.g11);
  p.max_abs_g12 = max_abs_interior(p.g12);
  p.max_abs_g11_g22 = max_abs_interior(diff);
  return p;
}

NullCurveField null_curve(const HeightMap& X, Signature signature) {
  X.validate();
  const auto& d = X.domain;
  NullCurveField out;
  out.domain = d;
  std::vector<double> holo(d.size(), 0.0);
  std::vector<Complex> sum(d.size(), 0.0);
  for (int c = 0; c < X.n(); ++c) {
    const ScalarField a = partial_x(X.components[c]), b = partial_y(X.components[c]);
    ComplexField phi(d);
    for (std::size_t k = 0; k < d.size(); ++k) phi.values[k] = Complex(a.values[k], -b.values[k]);
    const ScalarField u = take(phi, false), v = take(phi, true);
    const ScalarField ux = partial_x(u), uy = partial_y(u), vx = partial_x(v), vy = partial_y(v);
    const double sign = (signature == Signature::split && c >= 2) ? -1.0 : 1.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      holo[k] = std::max(holo[k], std::hypot(ux.values[k] - vy.values[k], uy.values[k] + vx.values[k]));
      sum[k] += sign * phi.values[k] * phi.values[k];
    }
    out.phi.push_back(std::move(phi));
  }
  std::vector<double> null(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) null[k] = std::abs(sum[k]);
  out.holomorphy_residual = max_interior(d, holo);
  out.nullity_residual = max_interior(d, null);
  return out;
}

WeierstrassReport verify_weierstrass_twin(const TwinPair& pair, const ConformalChart& chart,
                                          std::optional<GridDomain> target) {
  if (!(chart.domain == pair.f.domain)) throw Error(ErrorCode::InvalidArgument, "chart and twin pair grids differ");
  const auto inv = invert_chart(chart, target);
  const auto X = resample(inv, pair.f), Xh = resample(inv, pair.g);
  const auto phi = null_curve(X, Signature::euclidean), phih = null_curve(Xh, Signature::split);
  const auto& d = inv.target;

  WeierstrassReport out;
  out.target = d;
  out.nullity_minimal = phi.nullity_residual;
  out.nullity_maximal = phih.nullity_residual;
  const Complex I(0.0, 1.0);
  for (std::size_t c = 0; c < phi.phi.size(); ++c) {
    const Complex factor = c < 2 ? Complex(1.0) : I;
    std::vector<double> diff(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) diff[k] = std::abs(phi.phi[c].values[k] - factor * phih.phi[c].values[k]);
    out.relations.push_back({"phi" + std::to_string(c + 1), max_interior(d, diff)});
    out.max_residual = std::max(out.max_residual, out.relations.back().residual);
  }
  return out;
}

}  // namespace twinsurf
