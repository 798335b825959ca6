#include "twinsurf/grid.hpp"

#include <cmath>
#include <sstream>

#include "twinsurf/parallel.hpp"

namespace twinsurf {

namespace {
int g_threads = 1;
}

void set_num_threads(int n) { g_threads = n > 0 ? n : 1; }
int num_threads() { return g_threads; }

GridDomain GridDomain::span(double x0, double y0, double x1, double y1, int nx, int ny) {
  if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidGrid, "grid needs at least 5 nodes per axis");
  GridDomain d{x0, y0, (x1 - x0) / (nx - 1), (y1 - y0) / (ny - 1), nx, ny};
  d.validate();
  return d;
}

void GridDomain::validate() const {
  std::ostringstream os;
  if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy)) {
    os << "spacings must be positive, got dx=" << dx << " dy=" << dy;
  } else if (nx < 5 || ny < 5) {
    os << "grid needs at least 5 nodes per axis, got " << nx << "x" << ny;
  } else if (!std::isfinite(x0) || !std::isfinite(y0)) {
    os << "corner must be finite";
  } else {
    return;
  }
  throw Error(ErrorCode::InvalidGrid, os.str());
}

ScalarField ScalarField::sample(const GridDomain& d, const std::function<double(double, double)>& fn) {
  ScalarField out(d);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) out(i, j) = fn(d.x(i), d.y(j));
  return out;
}

HeightMap::HeightMap(std::vector<ScalarField> comps) : components(std::move(comps)) {
  if (components.empty()) throw Error(ErrorCode::InvalidArgument, "height map needs n >= 1 components");
  domain = components.front().domain;
}

void HeightMap::validate() const {
  if (components.empty()) throw Error(ErrorCode::InvalidArgument, "height map needs n >= 1 components");
  domain.validate();
  for (const auto& c : components) {
    if (!(c.domain == domain) || c.values.size() != domain.size())
      throw Error(ErrorCode::InvalidArgument, "height map components must share one domain");
    for (std::size_t k = 0; k < c.values.size(); ++k) {
      if (!std::isfinite(c.values[k])) {
        const int i = static_cast<int>(k % domain.nx);
        const int j = static_cast<int>(k / domain.nx);
        throw Error(ErrorCode::InvalidArgument, "non-finite height value", {{i, j}});
      }
    }
  }
  if (analytic && analytic->size() != components.size())
    throw Error(ErrorCode::InvalidArgument, "analytic gradients must match the component count");
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_interior(const ScalarField& f, const std::vector<unsigned char>& mask) {
  const auto& d = f.domain;
  double m = 0.0;
  for (int j = 1; j < d.ny - 1; ++j)
    for (int i = 1; i < d.nx - 1; ++i) {
      if (!mask.empty() && !mask[d.index(i, j)]) continue;
      m = std::max(m, std::abs(f(i, j)));
    }
  return m;
}

double rms_interior(const ScalarField& f, const std::vector<unsigned char>& mask) {
  const auto& d = f.domain;
  double sum = 0.0;
  std::size_t count = 0;
  for (int j = 1; j < d.ny - 1; ++j)
    for (int i = 1; i < d.nx - 1; ++i) {
      if (!mask.empty() && !mask[d.index(i, j)]) continue;
      sum += f(i, j) * f(i, j);
      ++count;
    }
  return count ? std::sqrt(sum / static_cast<double>(count)) : 0.0;
}

}  // namespace twinsurf
