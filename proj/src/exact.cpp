#include "gonlat/exact.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <stdexcept>

namespace gonlat {

LdlFactor ldl_decompose(const RatMatrix& p) {
  const Eigen::Index n = p.rows();
  LdlFactor f{RatMatrix::Identity(n, n), RatVector::Zero(n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    Rational d = p(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= f.lower(j, k) * f.lower(j, k) * f.diag(k);
    if (d <= 0) throw std::domain_error("ldl_decompose: form is not positive definite");
    f.diag(j) = d;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Rational s = p(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= f.lower(i, k) * f.lower(j, k) * f.diag(k);
      f.lower(i, j) = s / d;
    }
  }
  return f;
}

std::optional<RatMatrix> exact_inverse(const RatMatrix& m) {
  const Eigen::Index n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index r = c;
    while (r < n && a(r, c) == 0) ++r;
    if (r == n) return std::nullopt;
    if (r != c) {
      a.row(r).swap(a.row(c));
      inv.row(r).swap(inv.row(c));
    }
    const Rational pivot = a(c, c);
    a.row(c) /= pivot;
    inv.row(c) /= pivot;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      a.row(i) -= f * a.row(c);
      inv.row(i) -= f * inv.row(c);
    }
  }
  return inv;
}

namespace {

struct ExtendedGcd {
  std::int64_t g, x, y;
};

ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  return {old_r, old_s, old_t};
}

}  // namespace

std::pair<IntMatrix, std::int64_t> column_hermite(const IntVector& a) {
  const Eigen::Index n = a.size();
  IntMatrix u = IntMatrix::Identity(n, n);
  if (n == 0) return {u, 0};
  IntVector cur = a;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (cur(i) == 0) continue;
    if (cur(0) == 0) {
      u.col(0).swap(u.col(i));
      std::swap(cur(0), cur(i));
      continue;
    }
    const auto [g, x, y] = extended_gcd(cur(0), cur(i));
    const std::int64_t p = cur(0) / g;
    const std::int64_t q = cur(i) / g;
    const IntVector c0 = u.col(0);
    const IntVector ci = u.col(i);
    u.col(0) = x * c0 + y * ci;
    u.col(i) = -q * c0 + p * ci;
    cur(0) = g;
    cur(i) = 0;
  }
  if (cur(0) < 0) {
    u.col(0) = -u.col(0);
    cur(0) = -cur(0);
  }
  return {u, cur(0)};
}

IntMatrix lll_reduce_gram(const IntMatrix& gram) {
  // Integral LLL on the Gram matrix: d[i] is the i-th leading principal minor
  // of the current basis and lam(k, j) = d[j + 1] mu(k, j), both integers, so
  // every step is exact and only rows touched by a step are updated.
  const Eigen::Index n = gram.rows();
  IntMatrix t = IntMatrix::Identity(n, n);
  if (n < 2) return t;
  std::vector<Integer> d(static_cast<std::size_t>(n) + 1);
  Matrix<Integer> lam = Matrix<Integer>::Zero(n, n);
  auto dd = [&](Eigen::Index i) -> Integer& { return d[static_cast<std::size_t>(i)]; };
  auto pairing = [&](Eigen::Index i, Eigen::Index j) {
    return Integer(t.col(i).dot(gram * t.col(j)));
  };

  auto extend = [&](Eigen::Index k) {
    for (Eigen::Index j = 0; j <= k; ++j) {
      Integer u = pairing(k, j);
      for (Eigen::Index i = 0; i < j; ++i) u = (dd(i + 1) * u - lam(k, i) * lam(j, i)) / dd(i);
      if (j < k) lam(k, j) = u;
      else dd(k + 1) = u;
    }
    if (dd(k + 1) <= 0) throw std::domain_error("lll_reduce_gram: form is not positive definite");
  };
  auto reduce = [&](Eigen::Index k, Eigen::Index l) {
    const Integer& dl = dd(l + 1);
    if (2 * abs(lam(k, l)) <= dl) return;
    const Integer q = floor_div(2 * lam(k, l) + dl, 2 * dl);
    t.col(k) -= to_int64(q) * t.col(l);
    lam(k, l) -= q * dl;
    for (Eigen::Index i = 0; i < l; ++i) lam(k, i) -= q * lam(l, i);
  };
  Eigen::Index kmax = 0;
  auto swap = [&](Eigen::Index k) {
    t.col(k).swap(t.col(k - 1));
    for (Eigen::Index j = 0; j + 1 < k; ++j) std::swap(lam(k, j), lam(k - 1, j));
    const Integer l = lam(k, k - 1);
    const Integer b = (dd(k - 1) * dd(k + 1) + l * l) / dd(k);
    for (Eigen::Index i = k + 1; i <= kmax; ++i) {
      const Integer old = lam(i, k);
      lam(i, k) = (dd(k + 1) * lam(i, k - 1) - l * old) / dd(k);
      lam(i, k - 1) = (b * old + l * lam(i, k)) / dd(k + 1);
    }
    dd(k) = b;
  };

  dd(0) = 1;
  dd(1) = gram(0, 0);
  if (dd(1) <= 0) throw std::domain_error("lll_reduce_gram: form is not positive definite");
  Eigen::Index k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      extend(k);
    }
    reduce(k, k - 1);
    // Lovasz condition with delta = 3/4, cleared of denominators.
    if (4 * dd(k + 1) * dd(k - 1) < 3 * dd(k) * dd(k) - 4 * lam(k, k - 1) * lam(k, k - 1)) {
      swap(k);
      k = std::max<Eigen::Index>(k - 1, 1);
    } else {
      for (Eigen::Index l = k - 2; l >= 0; --l) reduce(k, l);
      ++k;
    }
  }
  return t;
}

}  // namespace gonlat
