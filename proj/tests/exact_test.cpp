#include <gtest/gtest.h>

#include "gonlat/exact.hpp"
#include "gonlat/verification.hpp"

using namespace gonlat;

TEST(Rational, FloorCeilNegative) {
  EXPECT_EQ(floor(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil(Rational(-7, 2)), -3);
  EXPECT_EQ(floor(Rational(7, 2)), 3);
  EXPECT_EQ(ceil(Rational(6, 2)), 3);
  EXPECT_EQ(floor_div(Integer(-7), Integer(2)), -4);
}

TEST(Rational, IntegerSquareRoots) {
  for (int n = 0; n < 2000; ++n) {
    const Integer r = isqrt(Integer(n));
    EXPECT_LE(r * r, n);
    EXPECT_GT((r + 1) * (r + 1), n);
    const Integer c = ceil_sqrt(Integer(n));
    EXPECT_GE(c * c, n);
    EXPECT_TRUE(c == 0 || (c - 1) * (c - 1) < n);
  }
}

// floor(a + sqrt(b)) against a brute scan over candidates.
TEST(Rational, FloorPlusSqrtMatchesScan) {
  for (int an = -9; an <= 9; ++an)
    for (int ad = 1; ad <= 4; ++ad)
      for (int bn = 0; bn <= 30; ++bn)
        for (int bd = 1; bd <= 3; ++bd) {
          const Rational a(an, ad), b(bn, bd);
          Integer best = -100;
          for (int k = -20; k <= 20; ++k) {
            const Rational d = Rational(k) - a;
            if (d <= 0 || d * d <= b) best = k;
          }
          EXPECT_EQ(floor_plus_sqrt(a, b), best) << an << "/" << ad << " " << bn << "/" << bd;
        }
  EXPECT_THROW(floor_plus_sqrt(Rational(0), Rational(-1)), std::domain_error);
}

TEST(Rational, ToInt64Checked) {
  EXPECT_EQ(to_int64(Integer(-5)), -5);
  EXPECT_THROW(to_int64(Integer(1) << 70), std::overflow_error);
}

TEST(Exact, CongruenceDiagonalSigns) {
  IntMatrix u(2, 2);
  u << 0, 1, 1, 0;
  const auto d = congruence_diagonal(u);
  int pos = 0, neg = 0;
  for (const auto& x : d) (x > 0 ? pos : neg) += 1;
  EXPECT_EQ(pos, 1);
  EXPECT_EQ(neg, 1);
}

TEST(Exact, BareissDeterminant) {
  IntMatrix m(3, 3);
  m << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  EXPECT_EQ(bareiss_determinant(m), 4);
  IntMatrix z(2, 2);
  z << 0, 1, 1, 0;
  EXPECT_EQ(bareiss_determinant(z), -1);
  IntMatrix s(2, 2);
  s << 1, 2, 2, 4;
  EXPECT_EQ(bareiss_determinant(s), 0);
}

TEST(Exact, LdlReconstructs) {
  IntMatrix m(3, 3);
  m << 4, 2, 1, 2, 5, 3, 1, 3, 6;
  const RatMatrix p = cast_matrix<Rational>(m);
  const LdlFactor f = ldl_decompose(p);
  const RatMatrix back = f.lower * f.diag.asDiagonal() * f.lower.transpose();
  EXPECT_TRUE(back == p);
  IntMatrix bad(2, 2);
  bad << 1, 2, 2, 1;
  EXPECT_THROW(ldl_decompose(cast_matrix<Rational>(bad)), std::domain_error);
}

TEST(Exact, InverseAndSingular) {
  IntMatrix m(2, 2);
  m << 2, 1, 1, 1;
  const auto inv = exact_inverse(cast_matrix<Rational>(m));
  ASSERT_TRUE(inv);
  EXPECT_TRUE(RatMatrix(*inv * cast_matrix<Rational>(m)) == RatMatrix::Identity(2, 2));
  IntMatrix s(2, 2);
  s << 1, 2, 2, 4;
  EXPECT_FALSE(exact_inverse(cast_matrix<Rational>(s)));
}

TEST(Exact, ColumnHermiteRandom) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    IntVector a(6);
    for (auto& x : a) x = rng.uniform(-30, 30);
    const auto [u, g] = column_hermite(a);
    std::int64_t expect = 0;
    for (auto x : a) expect = std::gcd(expect, x);
    EXPECT_EQ(g, expect);
    const IntVector row = u.transpose() * a;
    EXPECT_EQ(row(0), g);
    EXPECT_TRUE(row.tail(5).isZero());
    EXPECT_EQ(abs(bareiss_determinant(u)), 1);
  }
}

TEST(Exact, LllIsUnimodularAndSizeReduced) {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix b(5, 5);
    for (auto& x : b.reshaped()) x = rng.uniform(-9, 9);
    if (bareiss_determinant(b) == 0) continue;
    const IntMatrix gram = b.transpose() * b;
    const IntMatrix t = lll_reduce_gram(gram);
    EXPECT_EQ(abs(bareiss_determinant(t)), 1);
    const IntMatrix r = t.transpose() * gram * t;
    // first vector of an LLL basis is within 2^((n-1)/2) of the shortest,
    // so in particular no longer than the longest input vector
    EXPECT_LE(r(0, 0), gram.diagonal().maxCoeff());
    // size reduction in the Gram-Schmidt sense, |mu| <= 1/2
    const LdlFactor f = ldl_decompose(cast_matrix<Rational>(r));
    for (Eigen::Index i = 0; i < 5; ++i)
      for (Eigen::Index j = 0; j < i; ++j) EXPECT_LE(abs(f.lower(i, j)), Rational(1, 2));
  }
}
