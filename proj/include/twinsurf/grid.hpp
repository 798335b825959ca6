#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "twinsurf/error.hpp"

namespace twinsurf {

/// Uniform rectangular lattice. Node (i, j) sits at (x0 + i*dx, y0 + j*dy).
struct GridDomain {
  double x0 = 0.0;
  double y0 = 0.0;
  double dx = 1.0;
  double dy = 1.0;
  int nx = 5;
  int ny = 5;

  /// Grid spanning [x0, x1] x [y0, y1] with nx by ny nodes. Validates.
  static GridDomain span(double x0, double y0, double x1, double y1, int nx, int ny);

  /// Throws InvalidGrid unless dx, dy > 0 and nx, ny >= 5.
  void validate() const;

  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
  double x1() const { return x(nx - 1); }
  double y1() const { return y(ny - 1); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  bool contains(NodeIndex p) const { return p.i >= 0 && p.i < nx && p.j >= 0 && p.j < ny; }
  bool interior(int i, int j) const { return i > 0 && j > 0 && i < nx - 1 && j < ny - 1; }
  double spacing() const { return dx > dy ? dx : dy; }

  friend bool operator==(const GridDomain&, const GridDomain&) = default;
};

/// Real values on a GridDomain, row-major with x fastest.
struct ScalarField {
  GridDomain domain;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridDomain& d, double fill = 0.0) : domain(d), values(d.size(), fill) {}

  double& operator()(int i, int j) { return values[domain.index(i, j)]; }
  double operator()(int i, int j) const { return values[domain.index(i, j)]; }
  double at(NodeIndex p) const { return (*this)(p.i, p.j); }

  static ScalarField sample(const GridDomain& d, const std::function<double(double, double)>& fn);
};

/// First derivatives of one height component.
struct GradientField {
  ScalarField x;
  ScalarField y;
};

/// An n-component map f: grid -> R^n. Used for both minimal-side f and maximal-side g.
/// When `analytic` is set, derivative-consuming operations use it in place of
/// finite differences of the values.
struct HeightMap {
  GridDomain domain;
  std::vector<ScalarField> components;
  std::optional<std::vector<GradientField>> analytic;

  HeightMap() = default;
  HeightMap(const GridDomain& d, int n) : domain(d), components(static_cast<std::size_t>(n), ScalarField(d)) {}
  explicit HeightMap(std::vector<ScalarField> comps);

  int n() const { return static_cast<int>(components.size()); }

  /// Throws InvalidArgument on n < 1, mismatched domains or non-finite values.
  void validate() const;
};

double max_abs(const ScalarField& f);
/// Max of |f| over interior nodes where `mask` (if non-empty) is nonzero.
double max_abs_interior(const ScalarField& f, const std::vector<unsigned char>& mask = {});
/// Root-mean-square over interior nodes where `mask` (if non-empty) is nonzero.
double rms_interior(const ScalarField& f, const std::vector<unsigned char>& mask = {});

}  // namespace twinsurf
