#include <gtest/gtest.h>

#include <set>

#include "gonlat/enumeration.hpp"
#include "gonlat/errors.hpp"
#include "gonlat/invariants.hpp"
#include "gonlat/oracle.hpp"
#include "gonlat/verification.hpp"
#include "support/e8_shells.hpp"
#include "support/slice_oracle.hpp"

using namespace gonlat;

namespace {

using Rows = std::vector<std::vector<std::int64_t>>;

LatticeVector vec(const Lattice& l, std::vector<std::int64_t> v) {
  return LatticeVector(l, IntVector::Map(v.data(), static_cast<Eigen::Index>(v.size())));
}

PolarizedClass enriques(std::vector<std::int64_t> v) { return PolarizedClass(vec(preset("enriques_num"), std::move(v))); }

std::vector<std::vector<std::int64_t>> as_std(const std::vector<LatticeVector>& vs) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& v : vs) out.push_back(v.to_std());
  return out;
}

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no gonlat::Error thrown";
  return ErrorKind::InvalidConfig;
}

/// Classes on a few small hyperbolic lattices, for tests that need a full box scan.
std::vector<PolarizedClass> small_rank_classes() {
  const Lattice a = direct_sum({preset("U"), make_lattice(Rows{{-2}})});
  const Lattice b = direct_sum({preset("U"), make_lattice(Rows{{-2, 1}, {1, -2}})});
  const Lattice c = direct_sum({preset("U"), make_lattice(Rows{{-4}}), make_lattice(Rows{{-6}})});
  std::vector<PolarizedClass> out;
  for (const Lattice& l : {a, b, c})
    for (std::int64_t p = 1; p <= 3; ++p)
      for (std::int64_t q = 1; q <= 4; ++q)
        for (std::int64_t w = -2; w <= 2; ++w) {
          IntVector x = IntVector::Zero(l.rank());
          x(0) = p;
          x(1) = q;
          x(2) = w;
          const LatticeVector v(l, x);
          if (norm(v) > 0) out.emplace_back(v);
        }
  return out;
}

}  // namespace

TEST(Fiber, HyperbolicPlaneExamples) {
  const Lattice u = preset("U");
  const PolarizedClass c(vec(u, {2, 3}));
  const auto r = fiber_classes({c, 2, 0});
  EXPECT_EQ(as_std(r.vectors), (std::vector<std::vector<std::int64_t>>{{0, 1}}));
  EXPECT_TRUE(r.exhaustive);
  EXPECT_TRUE(fiber_classes({c, 1, 0, {.positive_side = true}}).vectors.empty());
}

// brute force over |coords| <= 10 on U, the derivation of the examples above
TEST(Fiber, HyperbolicPlaneMatchesScan) {
  const Lattice u = preset("U");
  for (std::int64_t a = 1; a <= 4; ++a)
    for (std::int64_t b = 1; b <= 4; ++b) {
      const PolarizedClass c(vec(u, {a, b}));
      const FiberEnumerator e(c);
      for (std::int64_t t = 1; t <= 6; ++t)
        for (std::int64_t n : {-4, -2, 0, 2, 4}) {
          std::vector<std::vector<std::int64_t>> want;
          for (std::int64_t x = -10; x <= 10; ++x)
            for (std::int64_t y = -10; y <= 10; ++y)
              if (x * b + y * a == t && 2 * x * y == n) want.push_back({x, y});
          EXPECT_EQ(as_std(e.fiber(t, n).vectors), want) << a << "," << b << " t=" << t << " n=" << n;
        }
    }
}

TEST(Fiber, AboveHodgeIsEmpty) {
  const auto c = enriques({2, 3, 0, 0, 0, 0, 0, 0, 0, 0});
  const auto r = fiber_classes({c, 3, 1});
  EXPECT_TRUE(r.vectors.empty());
  EXPECT_TRUE(r.exhaustive);
  EXPECT_TRUE(fiber_classes({c, 6, 4}).vectors.empty());
}

TEST(Fiber, ZeroPairingIsotropicOnlyZero) {
  const auto c = enriques({2, 3, 1, 0, 0, 0, 0, 0, 0, 0});
  const auto r = FiberEnumerator(c).fiber(0, 0);
  ASSERT_EQ(r.vectors.size(), 1u);
  EXPECT_TRUE(r.vectors.front().is_zero());
}

TEST(Fiber, RejectsNonHyperbolic) {
  const Lattice l = make_lattice(Rows{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}});
  const PolarizedClass c(vec(l, {1, 0, 0}), vec(l, {1, 0, 0}));
  EXPECT_EQ(kind_of([&] { FiberEnumerator e(c); }), ErrorKind::NotHyperbolic);
}

TEST(Fiber, PairingContentCongruence) {
  const auto c = enriques({2, 4, 0, 0, 0, 0, 0, 0, 0, 0});
  const FiberEnumerator e(c);
  EXPECT_EQ(e.pairing_content(), 2);
  EXPECT_TRUE(e.fiber(3, 0).vectors.empty());
  EXPECT_FALSE(e.fiber(2, 0).vectors.empty());
}

TEST(Fiber, SoundnessAndHodgeBound) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    IntVector x(10);
    x(0) = rng.uniform(1, 4);
    x(1) = rng.uniform(1, 4);
    for (int i = 2; i < 10; ++i) x(i) = rng.uniform(-1, 1);
    const LatticeVector v(preset("enriques_num"), x);
    if (norm(v) <= 0) continue;
    const PolarizedClass c(v);
    const FiberEnumerator e(c);
    for (std::int64_t t = 1; t <= 8; ++t)
      for (const auto& b : e.fiber(t, 4).vectors) {
        EXPECT_EQ(inner(b, c.vector()), t);
        EXPECT_EQ(norm(b), 4);
        EXPECT_GE(t * t, 4 * c.self_int());
      }
  }
}

TEST(Fiber, DoubledLatticeHasNoNormTwo) {
  const Lattice k3 = preset("k3_invariant");
  for (const auto& cv : {std::vector<std::int64_t>{1, 1, 0, 0, 0, 0, 0, 0, 0, 0},
                         std::vector<std::int64_t>{2, 3, 1, 0, 0, 0, 0, 0, 0, 0}}) {
    const PolarizedClass c(vec(k3, cv));
    const FiberEnumerator e(c);
    for (std::int64_t t = 1; t <= 12; ++t) {
      EXPECT_TRUE(e.fiber(t, 2).vectors.empty());
      EXPECT_TRUE(e.fiber(t, -2).vectors.empty());
    }
  }
}

TEST(Fiber, Deterministic) {
  const auto c = enriques({3, 2, 0, 1, 0, 0, 0, -1, 0, 0});
  const FiberEnumerator e(c);
  const auto a = e.fiber(9, 0), b = e.fiber(9, 0);
  EXPECT_EQ(a.vectors, b.vectors);
  EXPECT_TRUE(std::is_sorted(a.vectors.begin(), a.vectors.end()));
  EXPECT_EQ(FiberEnumerator(c).fiber(9, 0).vectors, a.vectors);
}

TEST(Fiber, ScaledAndRationalSearchAgree) {
  SplitMix64 rng(17);
  int compared = 0;
  while (compared < 40) {
    IntVector x(10);
    x(0) = rng.uniform(1, 6);
    x(1) = rng.uniform(1, 6);
    for (int i = 2; i < 10; ++i) x(i) = rng.uniform(-2, 2);
    const LatticeVector v(preset("enriques_num"), x);
    if (norm(v) <= 0) continue;
    const PolarizedClass c(v);
    const FiberEnumerator fast(c), slow(c, FiberEnumerator::Arithmetic::Rational);
    for (std::int64_t n : {0, 4, -2})
      for (std::int64_t t = 1; t <= 5; ++t) EXPECT_EQ(fast.fiber(t, n).vectors, slow.fiber(t, n).vectors);
    ++compared;
  }
}

TEST(MinFiber, Examples) {
  const auto c = enriques({2, 3, 0, 0, 0, 0, 0, 0, 0, 0});
  const auto m = min_fiber(c, 0, {.primitive_only = true}, 1, 3);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->pairing, 2);
  EXPECT_EQ(as_std(m->witnesses.vectors), (std::vector<std::vector<std::int64_t>>{{0, 1, 0, 0, 0, 0, 0, 0, 0, 0}}));
  EXPECT_FALSE(min_fiber(c, 4, {}, 1, 6));
  const auto h = enriques({1, 1, 0, 0, 0, 0, 0, 0, 0, 0});
  const auto m1 = min_fiber(h, 0, {}, 1, 1);
  ASSERT_TRUE(m1);
  EXPECT_EQ(m1->pairing, 1);
  EXPECT_EQ(as_std(m1->witnesses.vectors),
            (std::vector<std::vector<std::int64_t>>{{0, 1, 0, 0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0}}));
}

TEST(MinFiber, EmptyRange) {
  const auto c = enriques({2, 3, 0, 0, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(kind_of([&] { min_fiber(c, 0, {}, 0, 3); }), ErrorKind::EmptyRange);
  EXPECT_EQ(kind_of([&] { min_fiber(c, 0, {}, 4, 3); }), ErrorKind::EmptyRange);
}

TEST(BoxOracle, HyperbolicPlaneMinima) {
  const Lattice u = preset("U");
  for (std::int64_t a = 1; a <= 5; ++a)
    for (std::int64_t b = 1; b <= 5; ++b) {
      const PolarizedClass c(vec(u, {a, b}));
      const auto r = box_oracle(c, 0, {}, 6, 5);
      ASSERT_FALSE(r.empty());
      EXPECT_EQ(r.begin()->first, std::min(a, b));
    }
}

TEST(BoxOracle, EnriquesExampleAndGuard) {
  const auto c = enriques({2, 3, 0, 0, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(kind_of([&] { box_oracle(c, 0, {}, 4, 3); }), ErrorKind::BoxTooLarge);
  // the certified box for t <= 3 lies inside the radius-4 box
  const auto radii = certified_radii(c, 0, 3);
  for (auto r : radii) EXPECT_LE(r, 4);
  const auto r = box_oracle(c, 0, {}, radii, 3);
  ASSERT_FALSE(r.empty());
  EXPECT_EQ(r.begin()->first, 2);
  EXPECT_TRUE(r.begin()->second.exhaustive);
  EXPECT_EQ(as_std(r.begin()->second.vectors), (std::vector<std::vector<std::int64_t>>{{0, 1, 0, 0, 0, 0, 0, 0, 0, 0}}));
}

TEST(BoxOracle, UnitBoxWitnesses) {
  const auto c = enriques({1, 1, 0, 0, 0, 0, 0, 0, 0, 0});
  const auto r = box_oracle(c, 0, {}, 1, 1);
  ASSERT_EQ(r.count(1), 1u);
  EXPECT_EQ(as_std(r.at(1).vectors),
            (std::vector<std::vector<std::int64_t>>{{0, 1, 0, 0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0}}));
}

TEST(BoxOracle, Rejections) {
  const auto c = enriques({1, 1, 0, 0, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(kind_of([&] { box_oracle(c, 0, {}, 0, 1); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([&] { box_oracle(c, 0, {}, std::vector<std::int64_t>{1, 1}, 1); }),
            ErrorKind::DimensionMismatch);
}

// Everything a much larger box finds lies inside the certified radii.
TEST(BoxOracle, CertifiedRadiiAreSound) {
  for (const auto& c : small_rank_classes()) {
    const std::int64_t rank = c.lattice().rank();
    const std::int64_t wide = rank == 3 ? 40 : 14;
    for (std::int64_t n : {0, 2, 4}) {
      const std::int64_t cap = 6;
      const auto radii = certified_radii(c, n, cap);
      const auto big = box_oracle(c, n, {}, wide, cap);
      for (const auto& [t, res] : big)
        for (const auto& v : res.vectors)
          for (int i = 0; i < rank; ++i) EXPECT_LE(std::abs(v[i]), radii[static_cast<std::size_t>(i)]);
    }
  }
}

TEST(BoxOracle, AgreesWithFibersOnSmallLattices) {
  for (const auto& c : small_rank_classes()) {
    const FiberEnumerator e(c);
    for (std::int64_t n : {-2, 0, 2, 4}) {
      const std::int64_t cap = 7;
      const auto radii = certified_radii(c, n, cap);
      if (box_size(radii) > 20'000'000) continue;
      const auto box = box_oracle(c, n, {.positive_side = true}, radii, cap);
      for (std::int64_t t = 1; t <= cap; ++t) {
        const auto got = e.fiber(t, n, {.positive_side = true}).vectors;
        auto it = box.find(t);
        EXPECT_EQ(got, it == box.end() ? std::vector<LatticeVector>{} : it->second.vectors);
      }
    }
  }
}

TEST(E8Shells, ThetaSeriesAndRoots) {
  reference::E8Shells s;
  EXPECT_EQ(s.shell(0).size(), 1u);
  EXPECT_EQ(s.shell(2).size(), 240u);
  EXPECT_EQ(s.shell(4).size(), 2160u);
  EXPECT_EQ(s.shell(6).size(), 6720u);
  const auto cartan = reference::cartan_from_roots(s);
  const IntMatrix& g = preset("E8_minus").gram();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) EXPECT_EQ(cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], -g(i, j));
  for (const auto& y : s.shell(4)) {
    const auto c = s.to_roots(y);
    const auto back = s.from_roots(c);
    for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(back[k], y[k]);
  }
}

TEST(SliceOracle, MatchesFibersBeyondTheA1Set) {
  reference::SliceOracle slices;
  SplitMix64 rng(23);
  const FiberFlags flags{.primitive_only = true, .positive_side = true};
  int compared = 0;
  while (compared < 25) {
    IntVector x(10);
    x(0) = rng.uniform(1, 6);
    x(1) = rng.uniform(1, 6);
    for (int i = 2; i < 10; ++i) x(i) = rng.uniform(-1, 1);
    const LatticeVector v(preset("enriques_num"), x);
    if (norm(v) <= 0 || norm(v) > 40) continue;
    const PolarizedClass c(v);
    const std::int64_t cap0 = 3, cap4 = hodge_floor(c.self_int(), 4) + 1;
    const auto s0 = slices.run(c, 0, cap0, flags);
    const auto s4 = slices.run(c, 4, cap4, flags);
    if (!s0 || !s4) continue;  // shells too large for a unit test
    const FiberEnumerator e(c);
    for (auto [n, cap, s] : {std::tuple{0, cap0, &*s0}, std::tuple{4, cap4, &*s4}})
      for (std::int64_t t = 1; t <= cap; ++t) {
        std::vector<IntVector> got;
        for (const auto& f : e.fiber(t, n, flags).vectors) got.push_back(f.coords());
        auto it = s->find(t);
        EXPECT_EQ(got, it == s->end() ? std::vector<IntVector>{} : it->second) << x.transpose();
      }
    ++compared;
  }
}
