#pragma once

#include <optional>
#include <utility>

#include "twinsurf/systems.hpp"

namespace twinsurf {

/// Gradient-graph lift of a minimal graph: (h_x, h_y) = (M, N) with
/// dM = (E dx + F dy)/w and dN = (F dx + G dy)/w.
struct SLLift {
  ScalarField M, N, h;
  NodeIndex basepoint;
  double gradient_symmetry_residual = 0.0;  // max |M_y - N_x|
  double hessian_det_residual = 0.0;        // max |h_xx h_yy - h_xy^2 - 1|
  double area_residual = 0.0;               // max |d(M, N)/d(x, y) - 1|
};

/// M and N alone, shared with the conformal chart. No precondition checks.
std::pair<PotentialResult, PotentialResult> lift_potentials(const HeightMap& f, NodeIndex basepoint);

/// Throws NOT_MINIMAL or NOT_CLOSED (scaled residuals against `tol`,
/// default 50 h^2).
SLLift sl_lift(const HeightMap& f, NodeIndex basepoint = {0, 0}, std::optional<double> tol = std::nullopt);

enum class RotationMode { standard, reverse };

const char* to_string(RotationMode m);

struct SLParams {
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  int epsilon = 1;
  double theta = 0.0;

  /// standard: (cos, sin) for epsilon = 1, (cosh, sinh) for epsilon = -1.
  /// reverse: (sinh, cosh) for epsilon = 1, (cos, sin) for epsilon = -1.
  static SLParams from_theta(double theta, int epsilon, RotationMode mode = RotationMode::standard);

  /// lambda1^2 + eps lambda2^2 - 1 (standard) or -eps lambda1^2 + lambda2^2 - 1.
  double constraint_defect(RotationMode mode) const;
};

/// standard: h = l2 F - eps l1 (x^2 + y^2)/2
/// reverse:  h = l2 F + l1 (x^2 + eps y^2)/2
/// Throws PARAM_CONSTRAINT_VIOLATION when the constraint misses by > 1e-12.
ScalarField graph_rotate(const ScalarField& F, const SLParams& params, RotationMode mode = RotationMode::standard);

/// cos t (h_xx + h_yy) + sin t (1 - h_xx h_yy + h_xy^2); the scaled field
/// divides by max(1, |D^2 h|)^2 nodewise.
ResidualReport sl_residual(const ScalarField& h, double theta);

/// cosh t (h_xx + h_yy) + sinh t (1 + h_xx h_yy - h_xy^2). Nodes failing
/// (1 + det)^2 > lap^2 are reported as NOT_SPACELIKE and left out.
ResidualReport split_sl_residual(const ScalarField& h, double theta);

/// Determinant of the finite-difference Hessian.
ScalarField hessian_determinant(const ScalarField& h);

struct AngleEstimate {
  double theta = 0.0;
  double constancy_residual = 0.0;  // max |q - mean q| over interior nodes
  double mean_quotient = 0.0;
  bool inverted = false;  // euclidean only: q = (1 - det)/lap was used
};

/// split: q = lap/(1 + det), theta = -artanh(mean q).
/// euclidean: q = lap/(1 - det), theta = -arctan(mean q), or, when 1 - det
/// comes closer to 0 than lap does, q = (1 - det)/lap and
/// theta = pi/2 + arctan(mean q).
/// Throws DENOMINATOR_VANISHES, or PHI_OUT_OF_RANGE (split, |q| >= 1).
AngleEstimate detect_angle(const ScalarField& h, Signature mode);

}  // namespace twinsurf
