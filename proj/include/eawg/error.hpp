#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eawg {

enum class Errc {
  // input problems
  MissingZeroClass,
  MissingSingleton,
  OutOfRangeIndex,
  DimensionMismatch,
  IndexOrder,
  DimTooLarge,
  UnsupportedType,
  TwistOutOfRange,
  LatticeRequired,
  RankOutOfRange,
  IndexRange,
  JSetTooLarge,
  NotARoot,
  NotIntegral,
  ParseError,
  ValidationError,
  // invariant breaches: a construction bug or a contradiction with a theorem
  IntegralityViolation,
  NotPowerOfTwo,
  SearchExhausted,
  IdentityFailure,
  Overflow,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string &what);

  Errc code() const noexcept { return code_; }

  /// True for invariant breaches, false for bad input.
  bool is_internal() const noexcept;

 private:
  Errc code_;
};

}  // namespace eawg
