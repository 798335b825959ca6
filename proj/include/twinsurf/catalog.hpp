#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twinsurf/grid.hpp"

namespace twinsurf {

using Params = std::map<std::string, double>;

/// Values and analytic derivatives of every component at one point.
struct Jet {
  std::vector<double> value, fx, fy, fxx, fxy, fyy;
};

/// A closed-form graph with analytic first and second derivatives.
class CatalogEntry {
 public:
  virtual ~CatalogEntry() = default;

  virtual std::string name() const = 0;
  virtual int n() const = 0;
  /// True when every point of the closed rectangle lies in the region where
  /// the closed form is defined and smooth.
  virtual bool admissible(const GridDomain& d) const = 0;
  virtual Jet jet(double x, double y) const = 0;

  const Params& params() const { return params_; }

 protected:
  explicit CatalogEntry(Params p) : params_(std::move(p)) {}
  Params params_;
};

/// Closed-form (M, N) of the special Lagrangian lift.
using LiftEvaluator = std::function<std::pair<double, double>(double x, double y)>;

/// Entry names accepted by make_entry, in listing order.
const std::vector<std::string>& catalog_names();

/// Default parameter set of an entry (also the list of accepted keys, except
/// for the indexed coefficient families of plane, holomorphic and
/// chamberland_reverse).
Params default_params(const std::string& name);

/// Throws InvalidArgument for an unknown name or parameter.
std::unique_ptr<CatalogEntry> make_entry(const std::string& name, const Params& params = {});

/// Samples an entry. Throws DOMAIN_NOT_ADMISSIBLE when the grid leaves the
/// entry's region. With `attach_gradients` the analytic first derivatives
/// ride along in HeightMap::analytic.
HeightMap make_surface(const std::string& name, const Params& params, const GridDomain& domain,
                       bool attach_gradients = false);

/// The lift the literature states in closed form: catenoid, helicoid and
/// scherk. Others return nullopt.
std::optional<LiftEvaluator> known_lift(const std::string& name, const Params& params = {});

/// Default sampling rectangle {x0, y0, x1, y1} used by the CLI and the
/// verification suite.
std::vector<double> default_rectangle(const std::string& name);

double arcosh(double x);
double arsinh(double x);

}  // namespace twinsurf
