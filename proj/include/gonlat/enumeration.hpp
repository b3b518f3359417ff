#ifndef GONLAT_ENUMERATION_HPP
#define GONLAT_ENUMERATION_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "gonlat/exact.hpp"
#include "gonlat/lattice.hpp"

namespace gonlat {

struct FiberFlags {
  bool primitive_only = false;
  /// F.h > 0 for the polarization's reference class h.
  bool positive_side = false;
};

struct FiberQuery {
  PolarizedClass polarization;
  std::int64_t pairing;
  std::int64_t self_int;
  FiberFlags flags{};
};

struct FiberResult {
  std::vector<LatticeVector> vectors;  // lexicographically sorted
  bool exhaustive = true;
};

/// Enumerates {F : F.C = t, F^2 = n} on a hyperbolic lattice.
///
/// Writing F = x0 + K y with K a basis of the integral complement C^perp, the
/// fiber is the set of integer points on an ellipsoid shell of the negative
/// definite form -K^T G K, centred at a rational point. Points are found by a
/// depth-first search over an exact LDL factorization. The search runs on
/// 128-bit integers with every denominator cleared; when the cleared values
/// would overflow it falls back to the same search over GMP rationals. No
/// rounding enters either path.
///
/// The decomposition depends on C only and is shared by every (t, n) query.
class FiberEnumerator {
 public:
  /// Rational forces the GMP search everywhere; meant for cross-checks.
  enum class Arithmetic { Scaled, Rational };

  explicit FiberEnumerator(PolarizedClass c, Arithmetic arithmetic = Arithmetic::Scaled);

  const PolarizedClass& polarization() const { return c_; }

  FiberResult fiber(std::int64_t pairing, std::int64_t self_int, FiberFlags flags = {}) const;

  /// gcd of the linear form x -> x.C; fibers with t not divisible by it are empty.
  std::int64_t pairing_content() const { return content_; }

 private:
  PolarizedClass c_;
  IntVector pairing_row_;
  std::int64_t content_ = 0;
  IntVector particular_;  // pairing_row_ . particular_ == content_
  IntMatrix kernel_;      // columns span C^perp in Z^rank
  IntMatrix kernel_gram_; // -K^T G K, positive definite
  RatMatrix kernel_gram_inverse_;
  LdlFactor ldl_;

  struct Scaled;
  std::shared_ptr<const Scaled> scaled_;  // null when the scaled data overflows 128 bits
  bool search_scaled(std::int64_t pairing, std::int64_t self_int, const IntVector& b,
                     std::vector<IntVector>& hits) const;
};

FiberResult fiber_classes(const FiberQuery& q);

struct FiberMinimum {
  std::int64_t pairing;
  FiberResult witnesses;
};

/// Smallest t in [t_lo, t_hi] with a nonempty fiber, and all of its members.
std::optional<FiberMinimum> min_fiber(const PolarizedClass& c, std::int64_t self_int, FiberFlags flags,
                                      std::int64_t t_lo, std::int64_t t_hi);
std::optional<FiberMinimum> min_fiber(const FiberEnumerator& e, std::int64_t self_int, FiberFlags flags,
                                      std::int64_t t_lo, std::int64_t t_hi);

/// Integer recheck of the query constraints on a single vector.
bool satisfies(const PolarizedClass& c, const IntVector& f, std::int64_t pairing, std::int64_t self_int,
               FiberFlags flags);

}  // namespace gonlat

#endif  // GONLAT_ENUMERATION_HPP
