#pragma once

#include <complex>
#include <vector>

#include "twinsurf/fields.hpp"

namespace twinsurf {

using Complex = std::complex<double>;

/// Complex values on a grid, same layout as ScalarField.
struct ComplexField {
  GridDomain domain;
  std::vector<Complex> values;

  ComplexField() = default;
  explicit ComplexField(const GridDomain& d) : domain(d), values(d.size()) {}

  Complex& operator()(int i, int j) { return values[domain.index(i, j)]; }
  Complex operator()(int i, int j) const { return values[domain.index(i, j)]; }
};

/// Homogeneous coordinates [z_1 : ... : z_{n+2}] per node, scaled to unit
/// norm with the first component of modulus > 1e-14 rotated to the positive
/// real axis.
struct ProjectivePointField {
  GridDomain domain;
  std::vector<ComplexField> components;

  int n_plus_2() const { return static_cast<int>(components.size()); }
  std::vector<Complex> point(std::size_t k) const;
};

/// Applies the representative convention in place.
void normalize(ProjectivePointField& g);
void normalize_point(std::vector<Complex>& z);

/// [G/w, i - F/w, (G/w) a_k + (i - F/w) b_k].
ProjectivePointField gauss_map(const HeightMap& f);

/// [1 - iF/w, iE/w, (1 - iF/w) a_k + i (E/w) b_k].
ProjectivePointField gauss_map_alt(const HeightMap& f);

/// max |sum z_k^2|.
double quadric_residual(const ProjectivePointField& g);

/// Chordal distance sqrt(1 - |<z, w>|^2) for unit vectors.
double chordal_distance(const std::vector<Complex>& z, const std::vector<Complex>& w);

/// Max nodewise chordal distance between two fields on one grid.
double projective_distance(const ProjectivePointField& a, const ProjectivePointField& b);

struct HyperplaneFit {
  int i = 0, j = 0;  // 1-based
  Complex lambda;
  double residual = 0.0;  // max |z_i - lambda z_j| over valid nodes
  bool is_nonreal = false;
  double valid_fraction = 0.0;
};

constexpr double kNonrealThreshold = 1e-8;

/// Least-squares lambda in z_i = lambda z_j over nodes with |z_j| > 1e-8.
/// DEGENERATE_FIT when fewer than `min_fraction` of the nodes qualify.
HyperplaneFit hyperplane_fit(const ProjectivePointField& g, int i, int j, double min_fraction = 0.99);

/// Largest chordal distance over all node pairs, or over all pairs of a
/// fixed-seed sample of 4096 nodes on bigger grids.
double planarity_score(const ProjectivePointField& g);

struct JorgensGauss {
  ProjectivePointField field;
  int epsilon = 1;
};

/// [eps F_yy, i - eps F_xy, eps + i F_xy, i F_yy], eps = sign(F_xx + F_yy).
/// Throws NOT_UNIMODULAR when max |det D^2 F - 1| > tol over interior
/// nodes, SIGN_CHANGE when F_xx + F_yy is not of one strict sign.
JorgensGauss jorgens_gauss(const ScalarField& F, double tol = 1e-8);

}  // namespace twinsurf
