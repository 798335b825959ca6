#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twinsurf/gauss.hpp"
#include "twinsurf/twin.hpp"

namespace twinsurf {

/// Psi(x, y) = (x + M, y + N) with the lift potentials M, N.
struct ConformalChart {
  GridDomain domain;
  ScalarField M, N;
  ScalarField xi1, xi2;
  ScalarField J_psi;             // 2 + (E + G)/w
  ScalarField conformal_factor;  // w / J_psi
  NodeIndex basepoint;
};

/// Throws NOT_MINIMAL, NOT_CLOSED (scaled, default tol 50 h^2) and
/// JACOBIAN_BOUND_VIOLATION when J_psi <= 2 - 1e-9 somewhere.
ConformalChart build_chart(const HeightMap& f, NodeIndex basepoint = {0, 0}, std::optional<double> tol = std::nullopt);

/// Preimages under Psi of every node of a uniform xi-grid.
struct ChartInverse {
  GridDomain target;
  std::vector<double> x, y;
};

/// Largest xi-rectangle bounded by the images of the first and last interior
/// rows and columns, shrunk by two target cells per side; same node counts
/// as the chart.
GridDomain auto_target(const ConformalChart& chart);

/// Damped Newton on the bicubic interpolant of Psi, seeded from the nearest
/// forward-image node. Throws TARGET_OUTSIDE_IMAGE when a preimage leaves
/// the interior of the chart grid, NEWTON_DIVERGED when 50 iterations do not
/// bring |Psi(p) - xi| under 1e-12 max(1, |xi|).
ChartInverse invert_chart(const ConformalChart& chart, std::optional<GridDomain> target = std::nullopt);

/// Bicubic (4 x 4 Lagrange) value of `f` at (x, y).
double interpolate(const ScalarField& f, double x, double y);

/// Immersion on the xi-grid: components x(xi), y(xi), h_1(xi), ..., h_n(xi).
HeightMap resample(const ChartInverse& inv, const HeightMap& h);
HeightMap resample_to_chart(const ConformalChart& chart, const HeightMap& h,
                            std::optional<GridDomain> target = std::nullopt);

struct PullbackMetric {
  ScalarField g11, g12, g22;
  double max_g11 = 0.0;
  double max_abs_g12 = 0.0;       // interior
  double max_abs_g11_g22 = 0.0;   // interior
};

/// Euclidean pullback sum_k dX_k dX_k of a resampled immersion.
PullbackMetric pullback_metric(const HeightMap& X);

struct NullCurveField {
  GridDomain domain;
  std::vector<ComplexField> phi;  // dX_k/dxi1 - i dX_k/dxi2
  double holomorphy_residual = 0.0;  // max discrete |d phi / d conj(xi)|, interior
  double nullity_residual = 0.0;     // max |sum phi_k^2| (signed sum for split), interior
};

NullCurveField null_curve(const HeightMap& X, Signature signature);

struct RelationResidual {
  std::string name;
  double residual = 0.0;
};

struct WeierstrassReport {
  GridDomain target;
  std::vector<RelationResidual> relations;  // phi1, phi2, then phi3.. (one per height component)
  double max_residual = 0.0;
  double nullity_minimal = 0.0;
  double nullity_maximal = 0.0;
};

/// Resamples both sides of a twin pair through one chart and compares
/// phi_1 = phi_hat_1, phi_2 = phi_hat_2, phi_{k+2} = i phi_hat_{k+2}.
WeierstrassReport verify_weierstrass_twin(const TwinPair& pair, const ConformalChart& chart,
                                          std::optional<GridDomain> target = std::nullopt);

}  // namespace twinsurf
