#include "gonlat/rational.hpp"

#include <stdexcept>

#include "gonlat/errors.hpp"

namespace gonlat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::ZeroScale: return "ZeroScale";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::LatticePairMismatch: return "LatticePairMismatch";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::NonPositivePolarization: return "NonPositivePolarization";
    case ErrorKind::EmptyRange: return "EmptyRange";
    case ErrorKind::BoxTooLarge: return "BoxTooLarge";
    case ErrorKind::NoIsotropicSeed: return "NoIsotropicSeed";
    case ErrorKind::CapBelowHodgeFloor: return "CapBelowHodgeFloor";
    case ErrorKind::WrongLattice: return "WrongLattice";
    case ErrorKind::EmptySampleSpace: return "EmptySampleSpace";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

Integer floor(const Rational& q) {
  return floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

Integer ceil(const Rational& q) { return -floor(Rational(-q)); }

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

Integer ceil_sqrt(const Integer& n) {
  Integer r = isqrt(n);
  if (r * r < n) r += 1;
  return r;
}

Integer floor_plus_sqrt(const Rational& a, const Rational& b) {
  if (b < 0) throw std::domain_error("floor_plus_sqrt with negative radicand");
  // candidate from floors, then walk to the exact answer
  Integer k = floor(a) + isqrt(floor(b));
  auto fits = [&](const Integer& cand) {
    Rational d = Rational(cand) - a;
    return d <= 0 || d * d <= b;
  };
  while (!fits(k)) k -= 1;
  while (fits(k + 1)) k += 1;
  return k;
}

std::int64_t to_int64(const Integer& n) {
  if (n > Integer(INT64_MAX) || n < Integer(INT64_MIN)) throw std::overflow_error("integer exceeds 64 bits");
  return n.convert_to<std::int64_t>();
}

}  // namespace gonlat
