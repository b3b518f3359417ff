#include "gonlat/invariants.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gonlat/errors.hpp"

namespace gonlat {

std::string_view to_string(MuMode m) { return m == MuMode::PaperLiteral ? "paper_literal" : "kl1_full"; }

std::string_view to_string(Achiever a) {
  switch (a) {
    case Achiever::TwoPhi: return "TwoPhi";
    case Achiever::Mu: return "Mu";
    case Achiever::Quarter: return "Quarter";
  }
  return "?";
}

std::string_view to_string(ConePosition p) {
  switch (p) {
    case ConePosition::PositiveSide: return "PositiveSide";
    case ConePosition::NegativeSide: return "NegativeSide";
    case ConePosition::Orthogonal: return "Orthogonal";
  }
  return "?";
}

MuMode mu_mode_from_string(std::string_view s) {
  if (s == "paper_literal") return MuMode::PaperLiteral;
  if (s == "kl1_full") return MuMode::Kl1Full;
  throw Error(ErrorKind::InvalidConfig, "unknown mu mode '" + std::string(s) + "'");
}

Achiever achiever_from_string(std::string_view s) {
  if (s == "TwoPhi") return Achiever::TwoPhi;
  if (s == "Mu") return Achiever::Mu;
  if (s == "Quarter") return Achiever::Quarter;
  throw Error(ErrorKind::InvalidConfig, "unknown achiever '" + std::string(s) + "'");
}

std::int64_t hodge_floor(std::int64_t c2, std::int64_t n) {
  if (c2 <= 0 || n <= 0) return 0;
  return to_int64(ceil_sqrt(Integer(c2) * n));
}

std::int64_t maximal_gonality(std::int64_t genus) { return (genus + 3) / 2; }

bool is_enriques_lattice(const Lattice& l) { return l == preset("enriques_num"); }

PhiResult phi(const FiberEnumerator& e) {
  const PolarizedClass& c = e.polarization();
  const auto& seeds = c.lattice().isotropic_seeds();
  if (seeds.empty())
    throw Error(ErrorKind::NoIsotropicSeed, "lattice carries no isotropic seed to bound the search");
  std::int64_t bound = 0;
  for (const auto& s : seeds) {
    const std::int64_t p = std::abs(s.dot(c.lattice().gram() * c.vector().coords()));
    if (p > 0 && (bound == 0 || p < bound)) bound = p;
  }
  const auto found = min_fiber(e, 0, {.primitive_only = true, .positive_side = true}, 1, bound);
  if (!found) throw std::logic_error("phi: isotropic seed not recovered by the fiber search");
  return {found->pairing, found->witnesses.vectors.front()};
}

PhiResult phi(const PolarizedClass& c) { return phi(FiberEnumerator(c)); }

namespace {

/// Simple roots of the reflection group of U + E8(-1): the E8 simple roots,
/// f - theta with theta the highest root, and e - f. Their diagram is T(2,3,7).
/// rho pairs to 1 with every simple root and lies on the side of e + f.
struct Chamber {
  std::vector<IntVector> roots;
  IntVector rho;
};

Chamber make_enriques_chamber() {
  const Lattice l = preset("enriques_num");
  const IntMatrix& g = l.gram();
  auto unit = [](int i) {
    IntVector v = IntVector::Zero(10);
    v(i) = 1;
    return v;
  };
  IntVector theta = IntVector::Zero(10);
  theta.tail(8) << 2, 3, 4, 6, 5, 4, 3, 2;
  Chamber ch;
  for (int i = 2; i < 10; ++i) ch.roots.push_back(unit(i));
  ch.roots.push_back(unit(1) - theta);
  ch.roots.push_back(unit(0) - unit(1));

  IntMatrix r(10, 10);
  for (int i = 0; i < 10; ++i) r.col(i) = ch.roots[static_cast<std::size_t>(i)];
  const IntMatrix m = r.transpose() * g * r;
  for (int i = 0; i < 10; ++i)
    if (m(i, i) != -2) throw std::logic_error("chamber: simple root of wrong norm");
  const auto inv = exact_inverse(cast_matrix<Rational>(m));
  if (!inv) throw std::logic_error("chamber: simple roots are dependent");
  const RatVector coeffs = *inv * RatVector::Ones(10);
  ch.rho = IntVector::Zero(10);
  for (int i = 0; i < 10; ++i) {
    if (boost::multiprecision::denominator(coeffs(i)) != 1) throw std::logic_error("chamber: roots do not span");
    ch.rho += to_int64(boost::multiprecision::numerator(coeffs(i))) * r.col(i);
  }
  IntVector h = unit(0) + unit(1);
  if (ch.rho.dot(g * h) < 0) {
    ch.rho = -ch.rho;
    for (auto& x : ch.roots) x = -x;
  }
  return ch;
}

/// Moves b (b^2 > 0, on the side of e + f) into the chamber by simple
/// reflections x -> x + (x.r) r. Each step lowers b.rho, a positive integer.
IntVector chamber_representative(IntVector b, const IntMatrix& g) {
  static const Chamber ch = make_enriques_chamber();
  for (;;) {
    const IntVector gb = g * b;
    bool moved = false;
    for (const auto& r : ch.roots) {
      const std::int64_t p = r.dot(gb);
      if (p < 0) {
        b += p * r;
        moved = true;
        break;
      }
    }
    if (!moved) return b;
  }
}

}  // namespace

MuResult mu(const PolarizedClass& c, MuMode mode, std::int64_t cap) {
  const std::int64_t t_lo = hodge_floor(c.self_int(), 4);
  if (cap < t_lo - 2)
    throw Error(ErrorKind::CapBelowHodgeFloor,
                "mu cap " + std::to_string(cap) + " is below the Hodge floor " + std::to_string(t_lo - 2));
  // phi is invariant under reflections in (-2)-roots, so on the Enriques
  // lattice candidates are memoized by their chamber representative.
  const bool reduce = mode == MuMode::Kl1Full && is_enriques_lattice(c.lattice());
  std::map<std::vector<std::int64_t>, bool> memo;
  auto admissible = [&](const LatticeVector& b) {
    if (mode == MuMode::PaperLiteral) return true;
    const LatticeVector key =
        reduce ? LatticeVector(b.lattice(), chamber_representative(b.coords(), b.lattice().gram())) : b;
    auto [it, fresh] = memo.try_emplace(key.to_std(), false);
    if (fresh) it->second = phi(PolarizedClass(key, c.ample())).value == 2;
    return it->second;
  };
  const FiberEnumerator e(c);
  for (std::int64_t t = t_lo; t <= cap + 2; ++t) {
    const FiberResult r = e.fiber(t, 4, {.positive_side = true});
    for (const auto& b : r.vectors) {
      if (b == c.vector() || !admissible(b)) continue;
      return {t - 2, b, cap};
    }
  }
  return {std::nullopt, std::nullopt, cap};
}

namespace {

std::int64_t genus_of(std::int64_t self_int) {
  if (self_int % 2 != 0)
    throw Error(ErrorKind::InvalidConfig, "genus needs an even self-intersection, got " + std::to_string(self_int));
  return self_int / 2 + 1;
}

InvariantReport assemble(const PolarizedClass& c, const PhiResult& ph, MuMode mode,
                         std::optional<std::int64_t> mu_cap) {
  const std::int64_t c2 = c.self_int();
  const std::int64_t quarter = c2 / 4 + 2;
  const std::int64_t cap = std::max(std::min(2 * ph.value, quarter) + 2, mu_cap.value_or(0));
  MuResult m = cap >= hodge_floor(c2, 4) - 2 ? mu(c, mode, cap) : MuResult{std::nullopt, std::nullopt, cap};

  std::int64_t gengon = std::min(2 * ph.value, quarter);
  if (m.value) gengon = std::min(gengon, *m.value);
  std::vector<Achiever> achievers;
  if (2 * ph.value == gengon) achievers.push_back(Achiever::TwoPhi);
  if (m.value && *m.value == gengon) achievers.push_back(Achiever::Mu);
  if (quarter == gengon) achievers.push_back(Achiever::Quarter);

  const std::int64_t g = genus_of(c2);
  return InvariantReport{
      .klass = c.vector(),
      .self_int = c2,
      .phi = ph.value,
      .phi_witness = ph.witness,
      .mu_mode = mode,
      .mu = std::move(m),
      .quarter_term = quarter,
      .gengon = gengon,
      .achievers = std::move(achievers),
      .genus = g,
      .max_gonality = maximal_gonality(g),
      .k3 = std::nullopt,
      .dm = std::nullopt,
  };
}

void require_enriques(const PolarizedClass& c) {
  if (!is_enriques_lattice(c.lattice()))
    throw Error(ErrorKind::WrongLattice, "K3 invariants are defined for classes on enriques_num");
}

}  // namespace

InvariantReport gengon_report(const PolarizedClass& c, MuMode mode) {
  return assemble(c, phi(c), mode, std::nullopt);
}

InvariantReport gengon_report(const PolarizedClass& c, const PhiResult& phi_c, const ReportOptions& opts) {
  return assemble(c, phi_c, opts.mu_mode, opts.mu_cap);
}

K3Invariants k3_report(const PolarizedClass& c, const PhiResult& phi_c) {
  require_enriques(c);
  const LatticeVector lifted = pullback(c.vector());
  const std::int64_t self = norm(lifted);
  const std::int64_t genus = genus_of(self);
  const std::int64_t gon = 2 * phi_c.value;
  return K3Invariants{
      .self_int = self,
      .genus = genus,
      .gonality = gon,
      .gonality_witness = pullback(phi_c.witness),
      .clifford = gon - 2,
      .max_gonality = maximal_gonality(genus),
  };
}

K3Invariants k3_report(const PolarizedClass& c) {
  require_enriques(c);
  return k3_report(c, phi(c));
}

std::optional<CliffordDivisor> dm_min(const PolarizedClass& c, std::int64_t cliff_cap) {
  require_enriques(c);
  if (cliff_cap < 0) throw Error(ErrorKind::InvalidConfig, "Clifford cap must be nonnegative");
  const PolarizedClass cover(pullback(c.vector()), pullback(c.ample()));
  const FiberEnumerator e(cover);
  const std::int64_t l2 = cover.self_int();

  std::optional<CliffordDivisor> best;
  // value = t - m - 2 >= m - 2 once 2m <= t
  for (std::int64_t m = 0; m <= cliff_cap + 2; m += 4) {
    if (best && m - 2 >= best->value) break;
    const std::int64_t t_lo = std::max({std::int64_t{1}, hodge_floor(l2, m), 2 * m});
    std::int64_t t_hi = m + cliff_cap + 2;
    if (best) t_hi = std::min(t_hi, best->value + m + 1);
    for (std::int64_t t = t_lo; t <= t_hi; ++t) {
      FiberResult r = e.fiber(t, m, {.positive_side = true});
      if (r.vectors.empty()) continue;
      best = CliffordDivisor{t - m - 2, r.vectors.front(), m, t};
      break;
    }
  }
  return best;
}

InvariantReport full_report(const PolarizedClass& c, const ReportOptions& opts) {
  const FiberEnumerator e(c);
  const PhiResult ph = phi(e);
  InvariantReport r = assemble(c, ph, opts.mu_mode, opts.mu_cap);
  if (is_enriques_lattice(c.lattice())) {
    r.k3 = k3_report(c, ph);
    r.dm = dm_min(c, opts.dm_cap.value_or(r.k3->clifford));
  }
  return r;
}

ConePosition cone_position(const LatticeVector& x, const PolarizedClass& c) {
  const std::int64_t p = inner(x, c.ample());
  if (p > 0) return ConePosition::PositiveSide;
  if (p < 0) return ConePosition::NegativeSide;
  return ConePosition::Orthogonal;
}

bool is_big_and_nef(const LatticeVector& x, const PolarizedClass& c) {
  return norm(x) > 0 && inner(x, c.ample()) > 0;
}

}  // namespace gonlat
