#ifndef GONLAT_ORACLE_HPP
#define GONLAT_ORACLE_HPP

// Brute-force reference for fiber enumeration. Shares no code with the
// ellipsoid search: it scans a coordinate box point by point.

#include <cstdint>
#include <map>
#include <vector>

#include "gonlat/enumeration.hpp"

namespace gonlat {

inline constexpr std::uint64_t kMaxBoxPoints = 100'000'000;

/// Pairing value t -> all box vectors with F^2 = n, 0 < F.C = t <= t_cap.
/// A FiberResult is marked exhaustive when the box contains the certified box
/// for t_cap.
using OracleResult = std::map<std::int64_t, FiberResult>;

OracleResult box_oracle(const PolarizedClass& c, std::int64_t self_int, FiberFlags flags, std::int64_t radius,
                        std::int64_t t_cap);
OracleResult box_oracle(const PolarizedClass& c, std::int64_t self_int, FiberFlags flags,
                        const std::vector<std::int64_t>& radii, std::int64_t t_cap);

/// Per-coordinate bound valid for every F with F^2 = n and 0 < F.C <= t_cap.
///
/// With b_i* the dual basis, x_i = F.b_i*. Splitting F and b_i* along C and
/// C^perp and applying Cauchy-Schwarz on the definite complement gives
///   |x_i| <= |t C_i| / C^2 + sqrt((t^2/C^2 - n) (C_i^2/C^2 - (G^-1)_ii)),
/// which increases with t. All zeros when no solution can exist.
std::vector<std::int64_t> certified_radii(const PolarizedClass& c, std::int64_t self_int, std::int64_t t_cap);

/// Number of points in the box, saturating at UINT64_MAX.
std::uint64_t box_size(const std::vector<std::int64_t>& radii);

}  // namespace gonlat

#endif  // GONLAT_ORACLE_HPP
