#ifndef GONLAT_RATIONAL_HPP
#define GONLAT_RATIONAL_HPP

#include <cstdint>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace gonlat {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = Vector<std::int64_t>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

Integer floor_div(const Integer& a, const Integer& b);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);

/// Smallest integer k >= 0 with k*k >= n, for n >= 0.
Integer ceil_sqrt(const Integer& n);

/// floor(a + sqrt(b)) for b >= 0, computed without rounding.
Integer floor_plus_sqrt(const Rational& a, const Rational& b);

/// Checked narrowing; throws std::overflow_error when out of range.
std::int64_t to_int64(const Integer& n);

template <typename Scalar, typename Derived>
Matrix<Scalar> cast_matrix(const Eigen::MatrixBase<Derived>& m) {
  Matrix<Scalar> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Scalar(m(i, j));
  return out;
}

}  // namespace gonlat

#endif  // GONLAT_RATIONAL_HPP
