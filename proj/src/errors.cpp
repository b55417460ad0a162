#include "bergman/errors.hpp"

namespace bergman {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidDomain: return "InvalidDomain";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::HolomorphyViolation: return "HolomorphyViolation";
    case ErrorKind::DegenerateCenter: return "DegenerateCenter";
    case ErrorKind::DivergentMoment: return "DivergentMoment";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::BoundaryTooClose: return "BoundaryTooClose";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::MultipleZeroSuspected: return "MultipleZeroSuspected";
    case ErrorKind::InconsistentOrder: return "InconsistentOrder";
    case ErrorKind::NotAZero: return "NotAZero";
    case ErrorKind::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorKind::TrackingFailed: return "TrackingFailed";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace bergman
