#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vortex {

enum class ErrorKind {
  InvalidInput,
  DimensionMismatch,
  SingularCoupling,
  Collision,
  DomainError,
  NotInOpenSet,
  NotAFixedPoint,
  Infeasible,
  RankDeficiency,
  NoConvergence,
  UnsupportedScenario,
  ExcludedParameter,
  EmptyTrajectory,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vortex
