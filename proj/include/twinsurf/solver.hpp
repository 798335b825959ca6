#pragma once

#include <vector>

#include "twinsurf/fields.hpp"

namespace twinsurf {

struct SolveOptions {
  int max_outer = 200;
  double inner_tol = 1e-10;
  double outer_tol = 1e-9;
  double relaxation = 1.5;  // SOR factor in (0, 2)
  double spacelike_margin = 0.05;
  int max_inner = 20000;    // sweeps per linear solve

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

/// 2 / (1 + sin(pi h)) for the larger of the two node counts, the classical
/// optimum for the Laplacian on a square.
double optimal_relaxation(const GridDomain& d);

struct SolveResult {
  HeightMap solution;
  int outer_iterations = 0;
  bool converged = false;
  std::vector<double> update_history;  // max nodewise update per outer step
  std::vector<int> inner_sweeps;       // sweeps used by each outer step
  std::vector<double> damping;         // step factor applied per outer step (1 unless damped)
  double initial_scale = 1.0;          // factor applied to the initial guess (maximal only)
};

/// Picard iteration on G f_xx - 2F f_xy + E f_yy = 0 with Dirichlet data
/// taken from the boundary nodes of `boundary` (interior ignored). The
/// frozen linear problems are solved by four-colour SOR.
/// Throws MAX_ITERATIONS or DIVERGED.
SolveResult solve_minimal(const HeightMap& boundary, const SolveOptions& options = {});

/// Same with split-signature coefficients. The initial guess is halved
/// toward 0 until every interior node is spacelike with the margin, and
/// every outer step is bisected back toward the previous iterate until the
/// margin holds. Throws MAX_ITERATIONS, DIVERGED or SPACELIKE_UNREACHABLE.
SolveResult solve_maximal(const HeightMap& boundary, const SolveOptions& options = {});

/// Bilinear transfinite (Coons) interpolation of the boundary nodes.
HeightMap transfinite_interpolation(const HeightMap& boundary);

}  // namespace twinsurf
