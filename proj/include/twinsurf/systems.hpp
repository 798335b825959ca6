#pragma once

#include <string>
#include <vector>

#include "twinsurf/fields.hpp"

namespace twinsurf {

enum class Normalization { raw, scaled };

const char* to_string(Normalization n);

/// Pointwise residual fields plus interior aggregates.
///
/// Boundary nodes keep their values in the fields but are excluded from the
/// aggregates, as are nodes outside the spacelike mask (split signature).
/// The scaled field divides the raw one nodewise by (E + G) * max(1, |D^2 f|)
/// where |D^2 f| is the largest second derivative of any component there.
struct ResidualReport {
  std::string op;
  Signature signature = Signature::euclidean;
  Normalization normalization = Normalization::scaled;
  GridDomain grid;
  std::vector<ScalarField> raw;
  std::vector<ScalarField> scaled;
  double raw_max_abs = 0.0;
  double raw_l2 = 0.0;  // interior RMS
  double scaled_max_abs = 0.0;
  double scaled_l2 = 0.0;
  std::vector<Diagnostic> diagnostics;

  double max_abs() const { return normalization == Normalization::scaled ? scaled_max_abs : raw_max_abs; }
  double l2() const { return normalization == Normalization::scaled ? scaled_l2 : raw_l2; }
};

/// G f_xx - 2F f_xy + E f_yy per component.
ResidualReport minimal_residual(const HeightMap& f);

/// d/dx((G a - F b)/w) + d/dy((E b - F a)/w) per component.
ResidualReport divergence_residual(const HeightMap& f);

/// |d/dx(G/w) - d/dy(F/w)| and |d/dx(F/w) - d/dy(E/w)|, hatted under split signature.
ResidualReport closedness_identities(const HeightMap& f, Signature signature);

/// Split-signature analogue of minimal_residual. Non-spacelike nodes are
/// reported as a NOT_SPACELIKE diagnostic and left out of the aggregates.
ResidualReport maximal_residual(const HeightMap& g);

/// Nodewise (E + G) * max(1, |D^2 f|) for the report normalisation.
ScalarField residual_scale(const MetricData& metric, const std::vector<HessianField>& hessians);

/// Fills the aggregates of `r` from its raw and scaled fields.
void aggregate(ResidualReport& r, const std::vector<unsigned char>& mask = {});

}  // namespace twinsurf
