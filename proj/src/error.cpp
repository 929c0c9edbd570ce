#include "eawg/error.hpp"

namespace eawg {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::MissingZeroClass: return "MissingZeroClass";
    case Errc::MissingSingleton: return "MissingSingleton";
    case Errc::OutOfRangeIndex: return "OutOfRangeIndex";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::IndexOrder: return "IndexOrder";
    case Errc::DimTooLarge: return "DimTooLarge";
    case Errc::UnsupportedType: return "UnsupportedType";
    case Errc::TwistOutOfRange: return "TwistOutOfRange";
    case Errc::LatticeRequired: return "LatticeRequired";
    case Errc::RankOutOfRange: return "RankOutOfRange";
    case Errc::IndexRange: return "IndexRange";
    case Errc::JSetTooLarge: return "JSetTooLarge";
    case Errc::NotARoot: return "NotARoot";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::IntegralityViolation: return "IntegralityViolation";
    case Errc::NotPowerOfTwo: return "NotPowerOfTwo";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::IdentityFailure: return "IdentityFailure";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

bool Error::is_internal() const noexcept {
  switch (code_) {
    case Errc::IntegralityViolation:
    case Errc::NotPowerOfTwo:
    case Errc::SearchExhausted:
    case Errc::IdentityFailure:
    case Errc::Overflow:
      return true;
    default:
      return false;
  }
}

}  // namespace eawg
