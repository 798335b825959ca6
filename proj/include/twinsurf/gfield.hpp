#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twinsurf/grid.hpp"

namespace twinsurf {

/// Text grid-field container:
///
///   GFIELD 1
///   nx ny ncomp
///   x0 y0 dx dy
///   ncomp blocks of ny lines, nx values per line, y ascending.
///
/// Values are written with 17 significant digits, so write/read round-trips
/// every finite double bit-exactly.
struct GField {
  GridDomain domain;
  std::vector<ScalarField> components;
};

void write_gfield(std::ostream& os, const GridDomain& domain, const std::vector<ScalarField>& components);
void write_gfield(const std::string& path, const GridDomain& domain, const std::vector<ScalarField>& components);
GField read_gfield(std::istream& is);
GField read_gfield(const std::string& path);

inline HeightMap to_height_map(GField g) { return HeightMap(std::move(g.components)); }

}  // namespace twinsurf
