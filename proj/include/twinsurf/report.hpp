#pragma once

#include <string>

#include "json.hpp"
#include "twinsurf/conformal.hpp"
#include "twinsurf/gauss.hpp"
#include "twinsurf/slag.hpp"
#include "twinsurf/solver.hpp"
#include "twinsurf/systems.hpp"
#include "twinsurf/twin.hpp"

namespace twinsurf {

using Json = nlohmann::ordered_json;

/// Serialises with every floating-point number at 17 significant digits;
/// non-finite numbers become null.
std::string dump(const Json& j, int indent = 2);

/// 17 significant digits, "%.17g".
std::string format_double(double v);

Json to_json(const GridDomain& d);
Json to_json(const NodeIndex& p);
Json to_json(const Diagnostic& d);
Json to_json(const Error& e);
Json to_json(const ResidualReport& r);
Json to_json(const TwinDiagnostics& t, double tol);
Json to_json(const SLLift& s);
Json to_json(const AngleEstimate& a);
Json to_json(const HyperplaneFit& f);
Json to_json(const PullbackMetric& p);
Json to_json(const NullCurveField& n);
Json to_json(const WeierstrassReport& w);
Json to_json(const SolveResult& s);

}  // namespace twinsurf
