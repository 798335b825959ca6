#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "twinsurf/grid.hpp"

namespace testing {

using twinsurf::GridDomain;
using twinsurf::HeightMap;
using twinsurf::ScalarField;
using Fn = std::function<double(double, double)>;

inline HeightMap sample(const GridDomain& d, const std::vector<Fn>& fns) {
  std::vector<ScalarField> comps;
  for (const auto& fn : fns) comps.push_back(ScalarField::sample(d, fn));
  return HeightMap(std::move(comps));
}

inline double max_interior_error(const ScalarField& f, const Fn& exact) {
  const auto& d = f.domain;
  double e = 0.0;
  for (int j = 1; j < d.ny - 1; ++j)
    for (int i = 1; i < d.nx - 1; ++i) e = std::max(e, std::abs(f(i, j) - exact(d.x(i), d.y(j))));
  return e;
}

inline double max_error(const ScalarField& f, const Fn& exact) {
  const auto& d = f.domain;
  double e = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) e = std::max(e, std::abs(f(i, j) - exact(d.x(i), d.y(j))));
  return e;
}

/// Largest |a - b - c| over all nodes with c chosen at the basepoint.
inline double anchored_error(const ScalarField& f, const Fn& exact, twinsurf::NodeIndex bp = {0, 0}) {
  const auto& d = f.domain;
  const double c = f(bp.i, bp.j) - exact(d.x(bp.i), d.y(bp.j));
  return max_error(f, [&](double x, double y) { return exact(x, y) + c; });
}

// Closed forms, written out independently of the catalog.
inline double catenoid(double x, double y) { return std::acosh(std::sqrt(x * x + y * y)); }
inline double helicoid(double x, double y) { return std::atan(y / x); }
inline double scherk(double x, double y) { return std::log(std::cos(x) / std::cos(y)); }

inline GridDomain catenoid_grid(int nx, int ny) { return GridDomain::span(1.5, -0.75, 3.0, 0.75, nx, ny); }
inline GridDomain helicoid_grid(int n) { return GridDomain::span(1.0, 1.0, 2.0, 2.0, n, n); }
inline GridDomain scherk_grid(int n) { return GridDomain::span(-0.6, -0.6, 0.6, 0.6, n, n); }

}  // namespace testing
