#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bergman {

enum class ErrorKind {
  InvalidArgument,
  InvalidDomain,
  InvalidWeight,
  DomainViolation,
  PoleAtPoint,
  AlphaOutOfRange,
  DegreeTooHigh,
  InvalidAutomorphism,
  TruncationTooSmall,
  HolomorphyViolation,
  DegenerateCenter,
  DivergentMoment,
  IllConditioned,
  BoundaryTooClose,
  NoConvergence,
  MultipleZeroSuspected,
  InconsistentOrder,
  NotAZero,
  HypothesisUnmet,
  TrackingFailed,
  ValidationError,
};

std::string_view error_name(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above; the CLI
// reports the kind name on stderr.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace bergman
