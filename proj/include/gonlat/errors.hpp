#ifndef GONLAT_ERRORS_HPP
#define GONLAT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace gonlat {

enum class ErrorKind {
  NonSymmetric,
  Degenerate,
  DimensionMismatch,
  UnknownPreset,
  ZeroScale,
  ZeroVector,
  LatticePairMismatch,
  NotHyperbolic,
  NonPositivePolarization,
  EmptyRange,
  BoxTooLarge,
  NoIsotropicSeed,
  CapBelowHodgeFloor,
  WrongLattice,
  EmptySampleSpace,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gonlat

#endif  // GONLAT_ERRORS_HPP
