#pragma once

#include <optional>

#include "twinsurf/fields.hpp"

namespace twinsurf {

/// Residuals of the twin relations. Everything is a max over interior nodes.
struct TwinDiagnostics {
  double c1 = 0.0;           // gradient of g vs. the prescribed twin gradient, max over k
  double c2 = 0.0;           // |J^f_ij - J^g_ij|, max over pairs
  double c3 = 0.0;           // |w_hat * w - sin^2 Theta|
  double c4 = 0.0;           // max of |E/w - E_hat/w_hat| and the F, G analogues
  double involution = 0.0;   // given side vs. twin of the constructed side, anchored at the basepoint
};

struct TwinPair {
  HeightMap f;  // minimal side
  HeightMap g;  // maximal side
  MetricData metric_f, metric_g;
  JacobianData jac_f, jac_g;
  TwinDiagnostics diagnostics;
  NodeIndex basepoint;
  double tol = 0.0;
  bool from_minimal = true;  // f was given and g integrated
};

/// Default precondition slack, 50 h^2 with h the larger spacing.
double default_twin_tol(const GridDomain& d);

/// Integrates g_k from (-(E/w) b_k + (F/w) a_k, (G/w) a_k - (F/w) b_k).
/// Checks, in order: AREA_ANGLE_VIOLATION, NOT_CLOSED (scaled closedness
/// of the twin gradient), NOT_MINIMAL (scaled minimal residual).
TwinPair twin_forward(const HeightMap& f, NodeIndex basepoint = {0, 0}, std::optional<double> tol = std::nullopt);

/// Inverse construction from a spacelike maximal graph g. Checks
/// NOT_SPACELIKE, AREA_ANGLE_VIOLATION, NOT_CLOSED, NOT_MAXIMAL.
TwinPair twin_backward(const HeightMap& g, NodeIndex basepoint = {0, 0}, std::optional<double> tol = std::nullopt);

/// Recomputes all diagnostics from the two height maps.
TwinDiagnostics verify_twin(const TwinPair& pair);

/// The unchecked integrations behind twin_forward / twin_backward.
HeightMap integrate_twin_forward(const HeightMap& f, NodeIndex basepoint);
HeightMap integrate_twin_backward(const HeightMap& g, NodeIndex basepoint);

}  // namespace twinsurf
