#pragma once

#include <optional>
#include <vector>

#include "twinsurf/grid.hpp"

namespace twinsurf {

// Finite differences: second-order central stencils inside, second-order
// one-sided stencils on boundary rows and columns.
ScalarField partial_x(const ScalarField& f);
ScalarField partial_y(const ScalarField& f);
ScalarField partial_xx(const ScalarField& f);
ScalarField partial_yy(const ScalarField& f);
ScalarField partial_xy(const ScalarField& f);

struct HessianField {
  ScalarField xx;
  ScalarField xy;
  ScalarField yy;
};

HessianField hessian(const ScalarField& f);

/// First derivatives (alpha_k, beta_k) of every component: the analytic ones
/// when the height map carries them, finite differences otherwise.
std::vector<GradientField> gradients(const HeightMap& h);

enum class Signature { euclidean, split };

const char* to_string(Signature s);

/// Induced metric of a graph. Euclidean: E = 1 + sum a^2, F = sum a b,
/// G = 1 + sum b^2. Split: E = 1 - sum a^2, F = -sum a b, G = 1 - sum b^2.
/// omega = sqrt(EG - F^2) where that is positive; under split signature
/// `valid` marks the spacelike nodes and omega is 0 elsewhere.
struct MetricData {
  Signature signature = Signature::euclidean;
  ScalarField E, F, G, omega;
  std::vector<unsigned char> valid;
  std::optional<Diagnostic> diagnostic;  // SPLIT_NOT_SPACELIKE

  bool all_valid() const { return !diagnostic.has_value(); }
};

MetricData first_fundamental_form(const HeightMap& h, Signature signature);
MetricData metric_from_gradients(const GridDomain& d, const std::vector<GradientField>& grads, Signature signature);

struct PairJacobian {
  int i = 0;  // 1-based component indices, i < j
  int j = 0;
  ScalarField J;
};

/// Pairwise Jacobians J_ij = a_i b_j - a_j b_i, their norm and the area-angle
/// Theta = arccos(min(|J|, 1)).
struct JacobianData {
  std::vector<PairJacobian> pairs;
  ScalarField normJ;
  ScalarField theta;
  std::optional<Diagnostic> diagnostic;  // AREA_ANGLE_VIOLATION where |J| >= 1

  bool positive_area_angle() const { return !diagnostic.has_value(); }
};

JacobianData jacobian_data(const HeightMap& h);
JacobianData jacobian_from_gradients(const GridDomain& d, const std::vector<GradientField>& grads);

struct PotentialResult {
  ScalarField potential;
  ScalarField closedness_residual;  // |dP/dy - dQ/dx|
  NodeIndex basepoint;
  double max_closedness = 0.0;      // over interior nodes
};

/// Both axis-aligned L-path integrals of P dx + Q dy from the basepoint.
struct LPathIntegrals {
  ScalarField x_first;
  ScalarField y_first;
};

LPathIntegrals l_path_integrals(const ScalarField& P, const ScalarField& Q, NodeIndex basepoint);

/// Primitive u of the 1-form P dx + Q dy: trapezoid-rule integration along
/// the x-first and y-first L-paths, averaged, u(basepoint) = 0.
/// Throws NOT_CLOSED when `tol` is given and the interior closedness
/// residual exceeds it.
PotentialResult integrate_exact_form(const ScalarField& P, const ScalarField& Q, NodeIndex basepoint = {0, 0},
                                     std::optional<double> tol = std::nullopt);

/// Nodes where `bad(k)` holds for flat index k.
template <class Pred>
std::vector<NodeIndex> collect_nodes(const GridDomain& d, Pred&& bad) {
  std::vector<NodeIndex> out;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (bad(d.index(i, j))) out.push_back({i, j});
  return out;
}

}  // namespace twinsurf
