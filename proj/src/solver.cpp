#include "twinsurf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twinsurf/parallel.hpp"

namespace twinsurf {

namespace {

struct Coefficients {
  ScalarField a, b, c;  // a u_xx + b u_xy + c u_yy
};

Coefficients freeze(const HeightMap& u, Signature sig) {
  const auto m = first_fundamental_form(u, sig);
  Coefficients k{m.G, m.F, m.E};
  for (double& v : k.b.values) v *= -2.0;
  return k;
}

// One four-colour SOR sweep over the interior; returns the largest update.
// Nodes of one colour share no stencil entries, so rows of a colour can be
// processed in any order with identical results.
double sweep(ScalarField& u, const Coefficients& k, double omega) {
  const auto& d = u.domain;
  const double idx2 = 1.0 / (d.dx * d.dx), idy2 = 1.0 / (d.dy * d.dy), idxy = 1.0 / (4.0 * d.dx * d.dy);
  const int rows = d.ny - 2;
  std::vector<double> row_max(static_cast<std::size_t>(rows), 0.0);
  for (int cj = 0; cj < 2; ++cj) {
    for (int ci = 0; ci < 2; ++ci) {
      const int first_row = 1 + cj;
      const int count = first_row < d.ny - 1 ? (d.ny - 2 - first_row) / 2 + 1 : 0;
      for_each_row(count, [&](int r) {
        const int j = first_row + 2 * r;
        double m = row_max[j - 1];
        for (int i = 1 + ci; i < d.nx - 1; i += 2) {
          const std::size_t p = d.index(i, j);
          const double* v = u.values.data();
          const std::size_t e = p + 1, w = p - 1, n = p + d.nx, s = p - d.nx;
          const double cx = k.a.values[p] * idx2, cy = k.c.values[p] * idy2, cxy = k.b.values[p] * idxy;
          const double target = (cx * (v[e] + v[w]) + cy * (v[n] + v[s]) + cxy * (v[n + 1] - v[s + 1] - v[n - 1] + v[s - 1])) /
                                (2.0 * (cx + cy));
          const double delta = omega * (target - v[p]);
          u.values[p] += delta;
          m = std::max(m, std::abs(delta));
        }
        row_max[j - 1] = m;
      });
    }
  }
  double m = 0.0;
  for (double v : row_max) m = std::max(m, v);
  return m;
}

double max_update(const HeightMap& a, const HeightMap& b) {
  double m = 0.0;
  for (int c = 0; c < a.n(); ++c)
    for (std::size_t k = 0; k < a.domain.size(); ++k)
      m = std::max(m, std::abs(a.components[c].values[k] - b.components[c].values[k]));
  return m;
}

bool spacelike_with_margin(const HeightMap& u, double margin) {
  const auto m = first_fundamental_form(u, Signature::split);
  const auto& d = u.domain;
  for (int j = 1; j < d.ny - 1; ++j)
    for (int i = 1; i < d.nx - 1; ++i) {
      const std::size_t k = d.index(i, j);
      const double det = m.E.values[k] * m.G.values[k] - m.F.values[k] * m.F.values[k];
      if (!(m.E.values[k] > 0.0) || !(det >= margin * margin)) return false;
    }
  return true;
}

// u_old + s (u_new - u_old) on interior nodes.
HeightMap blend(const HeightMap& u_old, const HeightMap& u_new, double s) {
  HeightMap out = u_old;
  for (int c = 0; c < out.n(); ++c)
    for (std::size_t k = 0; k < out.domain.size(); ++k)
      out.components[c].values[k] += s * (u_new.components[c].values[k] - u_old.components[c].values[k]);
  return out;
}

SolveResult picard(const HeightMap& boundary, const SolveOptions& opt, Signature sig) {
  opt.validate();
  boundary.validate();
  SolveResult res;
  HeightMap u = transfinite_interpolation(boundary);
  u.analytic.reset();

  if (sig == Signature::split) {
    HeightMap zero(boundary.domain, boundary.n());
    HeightMap scaled = u;
    double t = 1.0;
    // The Coons patch agrees with the data on the boundary, so scaling the
    // whole patch and restoring the boundary scales the interior only.
    while (true) {
      scaled = blend(zero, u, t);
      for (int c = 0; c < u.n(); ++c) {
        const auto& d = u.domain;
        for (int j = 0; j < d.ny; ++j)
          for (int i = 0; i < d.nx; ++i)
            if (!d.interior(i, j)) scaled.components[c](i, j) = u.components[c](i, j);
      }
      if (spacelike_with_margin(scaled, opt.spacelike_margin)) break;
      t *= 0.5;
      if (t < 1e-6) throw Error(ErrorCode::SpacelikeUnreachable, "no scaling of the initial guess is spacelike");
    }
    u = std::move(scaled);
    res.initial_scale = t;
  }

  for (int outer = 1; outer <= opt.max_outer; ++outer) {
    const Coefficients k = freeze(u, sig);
    HeightMap next = u;
    int sweeps = 0;
    for (auto& comp : next.components) {
      int s = 0;
      while (s < opt.max_inner) {
        ++s;
        if (sweep(comp, k, opt.relaxation) <= opt.inner_tol) break;
      }
      sweeps = std::max(sweeps, s);
    }
    double s = 1.0;
    if (sig == Signature::split) {
      while (!spacelike_with_margin(blend(u, next, s), opt.spacelike_margin)) {
        s *= 0.5;
        if (s < 1e-6) throw Error(ErrorCode::SpacelikeUnreachable, "damping could not keep the iterate spacelike");
      }
      if (s < 1.0) next = blend(u, next, s);
    }
    const double update = max_update(u, next);
    u = std::move(next);
    res.update_history.push_back(update);
    res.inner_sweeps.push_back(sweeps);
    res.damping.push_back(s);
    res.outer_iterations = outer;
    if (!std::isfinite(update)) throw Error(ErrorCode::Diverged, "iterate became non-finite");
    if (update <= opt.outer_tol) {
      res.converged = true;
      break;
    }
    const auto& h = res.update_history;
    if (h.size() > 20 && update > 10.0 * h[h.size() - 21])
      throw Error(ErrorCode::Diverged, "outer update grew tenfold over 20 steps");
  }
  if (!res.converged) throw Error(ErrorCode::MaxIterations, "outer iteration limit reached");
  res.solution = std::move(u);
  return res;
}

}  // namespace

void SolveOptions::validate() const {
  if (max_outer < 1) throw Error(ErrorCode::InvalidArgument, "max_outer must be positive");
  if (max_inner < 1) throw Error(ErrorCode::InvalidArgument, "max_inner must be positive");
  if (!(inner_tol > 0.0) || !(outer_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  if (!(relaxation > 0.0 && relaxation < 2.0)) throw Error(ErrorCode::InvalidArgument, "relaxation must lie in (0, 2)");
  if (!(spacelike_margin >= 0.0 && spacelike_margin < 1.0))
    throw Error(ErrorCode::InvalidArgument, "spacelike_margin must lie in [0, 1)");
}

double optimal_relaxation(const GridDomain& d) {
  const int n = std::max(d.nx, d.ny) - 1;
  return 2.0 / (1.0 + std::sin(std::numbers::pi / n));
}

HeightMap transfinite_interpolation(const HeightMap& b) {
  b.validate();
  const auto& d = b.domain;
  HeightMap out(d, b.n());
  for (int c = 0; c < b.n(); ++c) {
    const auto& f = b.components[c];
    auto& u = out.components[c];
    const int I = d.nx - 1, J = d.ny - 1;
    for (int j = 0; j <= J; ++j) {
      const double t = static_cast<double>(j) / J;
      for (int i = 0; i <= I; ++i) {
        const double s = static_cast<double>(i) / I;
        u(i, j) = (1 - s) * f(0, j) + s * f(I, j) + (1 - t) * f(i, 0) + t * f(i, J) -
                  ((1 - s) * (1 - t) * f(0, 0) + s * (1 - t) * f(I, 0) + (1 - s) * t * f(0, J) + s * t * f(I, J));
      }
    }
  }
  return out;
}

SolveResult solve_minimal(const HeightMap& boundary, const SolveOptions& options) {
  return picard(boundary, options, Signature::euclidean);
}

SolveResult solve_maximal(const HeightMap& boundary, const SolveOptions& options) {
  return picard(boundary, options, Signature::split);
}

}  // namespace twinsurf
