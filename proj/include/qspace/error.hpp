#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qspace {

enum class Errc {
  NonPrime,
  NotIrreducible,
  NotPrimitive,
  NoDefaultModulus,
  DivisionByZero,
  FieldMismatch,
  LogOfZero,
  DimensionMismatch,
  AmbientMismatch,
  UnequalDimensions,
  CapExceeded,
  TooFewWords,
  ShapeMismatch,
  BadDelta,
  ZeroWeight,
  SkeletonDistanceTooSmall,
  MetricMismatch,
  UnitVectorInside,
  BadHyperplane,
  VInQ,
  NotDivisible,
  NotASubspace,
  BadParams,
  DimTooSmall,
  NotConstantDimension,
  InconsistentPins,
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the Errc tags.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qspace
