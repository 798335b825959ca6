#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twinsurf {

/// Grid node address, i along x (fastest), j along y.
struct NodeIndex {
  int i = 0;
  int j = 0;
  friend bool operator==(const NodeIndex&, const NodeIndex&) = default;
};

enum class ErrorCode {
  InvalidGrid,
  InvalidArgument,
  GfieldParse,
  Io,
  SplitNotSpacelike,
  AreaAngleViolation,
  NotClosed,
  NotMinimal,
  NotMaximal,
  NotSpacelike,
  ParamConstraintViolation,
  DenominatorVanishes,
  PhiOutOfRange,
  DegenerateFit,
  NotUnimodular,
  SignChange,
  JacobianBoundViolation,
  NewtonDiverged,
  TargetOutsideImage,
  DomainNotAdmissible,
  MaxIterations,
  Diverged,
  SpacelikeUnreachable,
};

/// Upper-snake enum name, e.g. "NOT_CLOSED".
std::string_view to_string(ErrorCode code);

/// True for errors caused by malformed input rather than by a computation.
bool is_validation_error(ErrorCode code);

/// A pointwise condition that failed on some nodes. Non-fatal by itself;
/// callers decide whether to escalate it into an Error.
struct Diagnostic {
  ErrorCode code;
  std::vector<NodeIndex> nodes;
  std::string message;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<NodeIndex> nodes = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<NodeIndex>& nodes() const noexcept { return nodes_; }

 private:
  ErrorCode code_;
  std::vector<NodeIndex> nodes_;
};

[[noreturn]] void raise(const Diagnostic& diagnostic);

}  // namespace twinsurf
