#include "twinsurf/error.hpp"

#include <algorithm>
#include <sstream>

namespace twinsurf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGrid: return "INVALID_GRID";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::GfieldParse: return "GFIELD_PARSE";
    case ErrorCode::Io: return "IO_ERROR";
    case ErrorCode::SplitNotSpacelike: return "SPLIT_NOT_SPACELIKE";
    case ErrorCode::AreaAngleViolation: return "AREA_ANGLE_VIOLATION";
    case ErrorCode::NotClosed: return "NOT_CLOSED";
    case ErrorCode::NotMinimal: return "NOT_MINIMAL";
    case ErrorCode::NotMaximal: return "NOT_MAXIMAL";
    case ErrorCode::NotSpacelike: return "NOT_SPACELIKE";
    case ErrorCode::ParamConstraintViolation: return "PARAM_CONSTRAINT_VIOLATION";
    case ErrorCode::DenominatorVanishes: return "DENOMINATOR_VANISHES";
    case ErrorCode::PhiOutOfRange: return "PHI_OUT_OF_RANGE";
    case ErrorCode::DegenerateFit: return "DEGENERATE_FIT";
    case ErrorCode::NotUnimodular: return "NOT_UNIMODULAR";
    case ErrorCode::SignChange: return "SIGN_CHANGE";
    case ErrorCode::JacobianBoundViolation: return "JACOBIAN_BOUND_VIOLATION";
    case ErrorCode::NewtonDiverged: return "NEWTON_DIVERGED";
    case ErrorCode::TargetOutsideImage: return "TARGET_OUTSIDE_IMAGE";
    case ErrorCode::DomainNotAdmissible: return "DOMAIN_NOT_ADMISSIBLE";
    case ErrorCode::MaxIterations: return "MAX_ITERATIONS";
    case ErrorCode::Diverged: return "DIVERGED";
    case ErrorCode::SpacelikeUnreachable: return "SPACELIKE_UNREACHABLE";
  }
  return "UNKNOWN";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGrid:
    case ErrorCode::InvalidArgument:
    case ErrorCode::GfieldParse:
    case ErrorCode::Io:
      return true;
    default:
      return false;
  }
}

namespace {

std::string describe(ErrorCode code, const std::string& message, const std::vector<NodeIndex>& nodes) {
  std::ostringstream os;
  os << to_string(code) << ": " << message;
  if (!nodes.empty()) {
    os << " (" << nodes.size() << " node" << (nodes.size() == 1 ? "" : "s") << ":";
    const std::size_t shown = std::min<std::size_t>(nodes.size(), 8);
    for (std::size_t k = 0; k < shown; ++k) os << " (" << nodes[k].i << "," << nodes[k].j << ")";
    if (shown < nodes.size()) os << " ...";
    os << ")";
  }
  return os.str();
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::vector<NodeIndex> nodes)
    : std::runtime_error(describe(code, message, nodes)), code_(code), nodes_(std::move(nodes)) {}

void raise(const Diagnostic& diagnostic) {
  throw Error(diagnostic.code, diagnostic.message, diagnostic.nodes);
}

}  // namespace twinsurf
