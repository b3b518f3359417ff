#ifndef GONLAT_EXACT_HPP
#define GONLAT_EXACT_HPP

// Exact linear algebra over Z and Q for small dense forms.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gonlat/rational.hpp"

namespace gonlat {

/// Diagonal of a form congruent to `gram` over Q (Lagrange reduction).
/// Zero pivots are repaired by swapping in a nonzero diagonal entry or by
/// replacing e_k with e_k + e_j. A trailing run of zeros marks a degenerate form.
template <typename Derived>
std::vector<Rational> congruence_diagonal(const Eigen::MatrixBase<Derived>& gram) {
  RatMatrix a = cast_matrix<Rational>(gram);
  const Eigen::Index n = a.rows();
  std::vector<Rational> diag;
  diag.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index swap_with = -1;
      for (Eigen::Index j = k + 1; j < n && swap_with < 0; ++j)
        if (a(j, j) != 0) swap_with = j;
      if (swap_with >= 0) {
        a.row(k).swap(a.row(swap_with));
        a.col(k).swap(a.col(swap_with));
      } else {
        Eigen::Index partner = -1;
        for (Eigen::Index j = k + 1; j < n && partner < 0; ++j)
          if (a(k, j) != 0) partner = j;
        if (partner < 0) {
          // row k is entirely zero in the remaining block
          diag.push_back(Rational(0));
          continue;
        }
        a.row(k) += a.row(partner);
        a.col(k) += a.col(partner);
      }
    }
    const Rational pivot = a(k, k);
    diag.push_back(pivot);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational factor = a(i, k) / pivot;
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      a(i, k) = 0;
      a(k, i) = 0;
    }
  }
  return diag;
}

/// Fraction-free Gaussian elimination.
template <typename Derived>
Integer bareiss_determinant(const Eigen::MatrixBase<Derived>& m) {
  Matrix<Integer> a = cast_matrix<Integer>(m);
  const Eigen::Index n = a.rows();
  if (n == 0) return Integer(1);
  Integer sign = 1;
  Integer prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return Integer(0);
      a.row(k).swap(a.row(r));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// P = L * diag(D) * L^T with L unit lower triangular; P must be positive definite.
struct LdlFactor {
  RatMatrix lower;
  RatVector diag;
};
LdlFactor ldl_decompose(const RatMatrix& p);

/// Exact inverse by Gauss-Jordan; nullopt when singular.
std::optional<RatMatrix> exact_inverse(const RatMatrix& m);

/// Unimodular U (columns) with a^T U = (g, 0, ..., 0), g = gcd(a) >= 0.
std::pair<IntMatrix, std::int64_t> column_hermite(const IntVector& a);

/// LLL-reduces the basis whose Gram matrix is the positive definite `gram`
/// (delta = 3/4). Returns the unimodular change of basis T; the reduced Gram
/// is T^T gram T.
IntMatrix lll_reduce_gram(const IntMatrix& gram);

}  // namespace gonlat

#endif  // GONLAT_EXACT_HPP
