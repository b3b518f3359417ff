#ifndef GONLAT_INVARIANTS_HPP
#define GONLAT_INVARIANTS_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gonlat/enumeration.hpp"
#include "gonlat/lattice.hpp"

namespace gonlat {

enum class MuMode {
  PaperLiteral,  // B > 0, B^2 = 4, B != C
  Kl1Full,       // additionally phi(B) = 2
};

enum class Achiever { TwoPhi, Mu, Quarter };

enum class ConePosition { PositiveSide, NegativeSide, Orthogonal };

std::string_view to_string(MuMode m);
std::string_view to_string(Achiever a);
std::string_view to_string(ConePosition p);
MuMode mu_mode_from_string(std::string_view s);
Achiever achiever_from_string(std::string_view s);

struct PhiResult {
  std::int64_t value;
  LatticeVector witness;  // primitive, isotropic, positive side, lexicographically first
};

/// mu is either a value with its witness, or "unbounded above" the searched cap.
struct MuResult {
  std::optional<std::int64_t> value;
  std::optional<LatticeVector> witness;
  std::int64_t cap;

  bool bounded() const { return value.has_value(); }
  friend bool operator==(const MuResult&, const MuResult&) = default;
};

struct K3Invariants {
  std::int64_t self_int;       // pullback(C)^2 = 2 C^2
  std::int64_t genus;          // C^2 + 1
  std::int64_t gonality;       // 2 phi(C)
  LatticeVector gonality_witness;  // pullback of the phi witness
  std::int64_t clifford;       // gonality - 2
  std::int64_t max_gonality;   // floor((genus + 3) / 2)
  friend bool operator==(const K3Invariants&, const K3Invariants&) = default;
};

/// Minimum of L.M - M^2 - 2 over the admissible divisors M on the double cover.
struct CliffordDivisor {
  std::int64_t value;
  LatticeVector witness;
  std::int64_t witness_norm;
  std::int64_t witness_pairing;
  friend bool operator==(const CliffordDivisor&, const CliffordDivisor&) = default;
};

struct InvariantReport {
  LatticeVector klass;
  std::int64_t self_int;
  std::int64_t phi;
  LatticeVector phi_witness;
  MuMode mu_mode;
  MuResult mu;
  std::int64_t quarter_term;
  std::int64_t gengon;
  std::vector<Achiever> achievers;
  std::int64_t genus;
  std::int64_t max_gonality;
  std::optional<K3Invariants> k3;
  std::optional<CliffordDivisor> dm;
  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

/// Smallest t >= 0 with t^2 >= n * c2 (n, c2 >= 0).
std::int64_t hodge_floor(std::int64_t c2, std::int64_t n);

/// floor((g + 3) / 2)
std::int64_t maximal_gonality(std::int64_t genus);

PhiResult phi(const PolarizedClass& c);
PhiResult phi(const FiberEnumerator& e);

MuResult mu(const PolarizedClass& c, MuMode mode, std::int64_t cap);

struct ReportOptions {
  MuMode mu_mode = MuMode::Kl1Full;
  /// Raises the mu search cap above min(2 phi, quarter) + 2; never lowers it.
  std::optional<std::int64_t> mu_cap;
  /// Defaults to k3 gonality - 2, which the isotropic divisors always reach.
  std::optional<std::int64_t> dm_cap;
};

/// phi, mu, gengon and the curve invariants on the Enriques side.
InvariantReport gengon_report(const PolarizedClass& c, MuMode mode = MuMode::Kl1Full);
InvariantReport gengon_report(const PolarizedClass& c, const PhiResult& phi_c, const ReportOptions& opts);

/// Invariants of the pulled-back curve on the K3 cover; C must be on enriques_num.
K3Invariants k3_report(const PolarizedClass& c);
K3Invariants k3_report(const PolarizedClass& c, const PhiResult& phi_c);

/// Searches M on the doubled lattice with M^2 in {0, 4, 8, ...}, M.h > 0,
/// 2 M^2 <= M.L and L.M - M^2 - 2 <= cliff_cap, for L = pullback(C). Ties keep
/// the smaller M^2, then the smaller pairing, then the lexicographically first M.
std::optional<CliffordDivisor> dm_min(const PolarizedClass& c, std::int64_t cliff_cap);


/// gengon_report plus, on enriques_num, the K3 fields and the divisor search.
InvariantReport full_report(const PolarizedClass& c, const ReportOptions& opts = {});

ConePosition cone_position(const LatticeVector& x, const PolarizedClass& c);
bool is_big_and_nef(const LatticeVector& x, const PolarizedClass& c);

bool is_enriques_lattice(const Lattice& l);

}  // namespace gonlat

#endif  // GONLAT_INVARIANTS_HPP
