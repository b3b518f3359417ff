#include "gonlat/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gonlat/errors.hpp"

namespace gonlat {

using i128 = __int128;

namespace {

struct Overflow {};

i128 mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

i128 add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}

i128 sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

i128 to_i128(const Integer& n) {
  static const Integer limit = Integer(1) << 120;
  if (abs(n) >= limit) throw Overflow{};
  const bool neg = n < 0;
  Integer m = abs(n);
  const auto hi = static_cast<std::uint64_t>(static_cast<Integer>(m >> 64));
  const auto lo = static_cast<std::uint64_t>(static_cast<Integer>(m & Integer(UINT64_MAX)));
  const i128 v = (static_cast<i128>(hi) << 64) | static_cast<i128>(lo);
  return neg ? -v : v;
}

i128 floor_div(i128 a, i128 b) {  // b > 0
  i128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

/// floor(sqrt(n)) for 0 <= n < 2^124.
i128 isqrt(i128 n) {
  auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

/// The shell condition sum_i D_i z_i^2 = t^2 / C^2 - n with every denominator
/// cleared. With d[i] the leading minors of P (so D_i = d[i+1] / d[i]),
/// lam(j, i) = d[i+1] L(j, i), delta = det P and adj = delta P^-1, put
/// X = delta y - adj b and Z_i = d[i+1] X_i + sum_{j > i} lam(j, i) X_j. The
/// condition becomes sum_i C^2 mult[i] Z_i^2 = den delta^2 (t^2 - n C^2) with
/// den = lcm(d[i] d[i+1]) and mult[i] = den / (d[i] d[i+1]).
struct FiberEnumerator::Scaled {
  Eigen::Index k = 0;
  std::vector<i128> d;
  std::vector<i128> lam;  // row-major k x k
  std::vector<i128> adj;  // row-major k x k
  std::vector<i128> mult;
  i128 den = 1;
  i128 delta = 1;
};

FiberEnumerator::FiberEnumerator(PolarizedClass c, Arithmetic arithmetic) : c_(std::move(c)) {
  const Lattice& l = c_.lattice();
  if (!l.is_hyperbolic())
    throw Error(ErrorKind::NotHyperbolic, "fiber enumeration needs signature (1, rank-1)");
  const IntMatrix& g = l.gram();
  pairing_row_ = g * c_.vector().coords();

  auto [u, content] = column_hermite(pairing_row_);
  content_ = content;
  particular_ = u.col(0);
  const Eigen::Index k = l.rank() - 1;
  kernel_ = u.rightCols(k);
  if (k > 0) {
    const IntMatrix p = -(kernel_.transpose() * g * kernel_);
    const IntMatrix t = lll_reduce_gram(p);
    kernel_ = kernel_ * t;
    kernel_gram_ = t.transpose() * p * t;
    const RatMatrix pq = cast_matrix<Rational>(kernel_gram_);
    ldl_ = ldl_decompose(pq);
    kernel_gram_inverse_ = *exact_inverse(pq);
    if (arithmetic == Arithmetic::Rational) return;
    try {
      auto sc = std::make_shared<Scaled>();
      sc->k = k;
      sc->d.assign(static_cast<std::size_t>(k) + 1, 1);
      Integer minor = 1;
      std::vector<Integer> dz{minor};
      for (Eigen::Index i = 0; i < k; ++i) {
        const Rational next = Rational(minor) * ldl_.diag(i);
        if (boost::multiprecision::denominator(next) != 1) throw Overflow{};
        minor = boost::multiprecision::numerator(next);
        dz.push_back(minor);
        sc->d[static_cast<std::size_t>(i) + 1] = to_i128(minor);
      }
      sc->delta = sc->d.back();
      auto at = [k](Eigen::Index r, Eigen::Index c) { return static_cast<std::size_t>(r * k + c); };
      sc->lam.assign(static_cast<std::size_t>(k * k), 0);
      sc->adj.assign(static_cast<std::size_t>(k * k), 0);
      for (Eigen::Index j = 0; j < k; ++j)
        for (Eigen::Index i = 0; i < k; ++i) {
          if (j > i) {
            const Rational v = ldl_.lower(j, i) * dz[static_cast<std::size_t>(i) + 1];
            if (boost::multiprecision::denominator(v) != 1) throw Overflow{};
            sc->lam[at(j, i)] = to_i128(boost::multiprecision::numerator(v));
          }
          const Rational a = kernel_gram_inverse_(j, i) * minor;
          if (boost::multiprecision::denominator(a) != 1) throw Overflow{};
          sc->adj[at(j, i)] = to_i128(boost::multiprecision::numerator(a));
        }
      Integer den = 1;
      for (Eigen::Index i = 0; i < k; ++i) {
        const Integer pr = dz[static_cast<std::size_t>(i)] * dz[static_cast<std::size_t>(i) + 1];
        den = den / boost::multiprecision::gcd(den, pr) * pr;
      }
      sc->den = to_i128(den);
      for (Eigen::Index i = 0; i < k; ++i)
        sc->mult.push_back(to_i128(den / (dz[static_cast<std::size_t>(i)] * dz[static_cast<std::size_t>(i) + 1])));
      scaled_ = std::move(sc);
    } catch (const Overflow&) {
      scaled_.reset();
    }
  }
}

bool FiberEnumerator::search_scaled(std::int64_t pairing, std::int64_t self_int, const IntVector& b,
                                    std::vector<IntVector>& hits) const {
  if (!scaled_) return false;
  const Scaled& sc = *scaled_;
  const Eigen::Index k = sc.k;
  auto at = [k](Eigen::Index r, Eigen::Index c) { return static_cast<std::size_t>(r * k + c); };
  try {
    const i128 c2 = c_.self_int();
    std::vector<i128> u(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) u[static_cast<std::size_t>(i)] = add(u[static_cast<std::size_t>(i)], mul(sc.adj[at(i, j)], b(j)));
    // same radius consistency check as the rational path, times delta C^2
    const IntVector x0 = (pairing / content_) * particular_;
    const i128 x0sq = x0.dot(c_.lattice().gram() * x0);
    i128 bu = 0;
    for (Eigen::Index i = 0; i < k; ++i) bu = add(bu, mul(b(i), u[static_cast<std::size_t>(i)]));
    const i128 shell = sub(mul(pairing, pairing), mul(self_int, c2));
    if (add(mul(mul(c2, sc.delta), sub(x0sq, self_int)), mul(c2, bu)) != mul(sc.delta, shell))
      throw std::logic_error("fiber: inconsistent shell radius");
    const i128 total = mul(mul(sc.den, mul(sc.delta, sc.delta)), shell);
    if (total >= (i128(1) << 124)) throw Overflow{};

    std::vector<IntVector> found;
    IntVector y = IntVector::Zero(k);
    std::vector<i128> x(static_cast<std::size_t>(k), 0);
    auto descend = [&](auto&& self, Eigen::Index i, i128 rem) -> void {
      const std::size_t si = static_cast<std::size_t>(i);
      i128 s = -mul(sc.d[si + 1], u[si]);
      for (Eigen::Index j = i + 1; j < k; ++j) s = add(s, mul(sc.lam[at(j, i)], x[static_cast<std::size_t>(j)]));
      const i128 weight = mul(c2, sc.mult[si]);
      const i128 bound = isqrt(rem / weight);
      const i128 step = mul(sc.d[si + 1], sc.delta);
      const i128 lo = ceil_div(-bound - s, step);
      const i128 hi = floor_div(bound - s, step);
      for (i128 v = lo; v <= hi; ++v) {
        const i128 z = add(mul(step, v), s);
        const i128 rest = rem - weight * z * z;  // z^2 weight <= rem by the choice of bound
        if (v > INT64_MAX || v < INT64_MIN) throw Overflow{};
        y(i) = static_cast<std::int64_t>(v);
        x[si] = sub(mul(sc.delta, v), u[si]);
        if (i == 0) {
          if (rest == 0) found.push_back(y);
        } else {
          self(self, i - 1, rest);
        }
      }
    };
    descend(descend, k - 1, total);
    hits = std::move(found);
    return true;
  } catch (const Overflow&) {
    return false;
  }
}

bool satisfies(const PolarizedClass& c, const IntVector& f, std::int64_t pairing, std::int64_t self_int,
               FiberFlags flags) {
  const IntMatrix& g = c.lattice().gram();
  const IntVector gf = g * f;
  if (gf.dot(c.vector().coords()) != pairing) return false;
  if (gf.dot(f) != self_int) return false;
  if (flags.positive_side && gf.dot(c.ample().coords()) <= 0) return false;
  if (flags.primitive_only) {
    std::int64_t content = 0;
    for (Eigen::Index i = 0; i < f.size(); ++i) content = std::gcd(content, f(i));
    if (content != 1) return false;
  }
  return true;
}

namespace {

struct ShellSearch {
  const LdlFactor& ldl;
  const RatVector& center;
  std::vector<IntVector>& hits;
  IntVector y;
  RatVector offset;  // y - center on the levels already fixed

  void run(const Rational& radius) {
    const Eigen::Index k = center.size();
    y = IntVector::Zero(k);
    offset = RatVector::Zero(k);
    descend(k - 1, radius);
  }

  void descend(Eigen::Index i, const Rational& remaining) {
    Rational c = center(i);
    for (Eigen::Index j = i + 1; j < center.size(); ++j) c -= ldl.lower(j, i) * offset(j);
    const Rational spread = remaining / ldl.diag(i);
    const Integer hi = floor_plus_sqrt(c, spread);
    const Integer lo = -floor_plus_sqrt(Rational(-c), spread);
    for (Integer v = lo; v <= hi; ++v) {
      const Rational d = Rational(v) - c;
      const Rational rest = remaining - ldl.diag(i) * d * d;
      y(i) = to_int64(v);
      offset(i) = Rational(v) - center(i);
      if (i == 0) {
        if (rest == 0) hits.push_back(y);
      } else {
        descend(i - 1, rest);
      }
    }
  }
};

}  // namespace

FiberResult FiberEnumerator::fiber(std::int64_t pairing, std::int64_t self_int, FiberFlags flags) const {
  FiberResult out;
  out.exhaustive = true;
  if (pairing % content_ != 0) return out;
  const Rational radius = Rational(pairing) * pairing / c_.self_int() - self_int;
  if (radius < 0) return out;

  const Lattice& l = c_.lattice();
  const IntVector x0 = (pairing / content_) * particular_;
  std::vector<IntVector> candidates;
  if (kernel_.cols() == 0) {
    if (radius == 0) candidates.push_back(x0);
  } else {
    const IntVector b = kernel_.transpose() * (l.gram() * x0);
    std::vector<IntVector> ys;
    if (!search_scaled(pairing, self_int, b, ys)) {
      const RatVector center = kernel_gram_inverse_ * cast_matrix<Rational>(b);
      // the shell radius must agree with the one derived from the split along C
      const Rational check =
          Rational(x0.dot(l.gram() * x0)) - self_int + cast_matrix<Rational>(b).col(0).dot(center);
      if (check != radius) throw std::logic_error("fiber: inconsistent shell radius");
      ShellSearch search{ldl_, center, ys, {}, {}};
      search.run(radius);
    }
    candidates.reserve(ys.size());
    for (const auto& y : ys) candidates.push_back(x0 + kernel_ * y);
  }

  for (const auto& f : candidates) {
    if (!satisfies(c_, f, pairing, self_int, {})) throw std::logic_error("fiber: enumerated vector fails recheck");
    if (!satisfies(c_, f, pairing, self_int, flags)) continue;
    out.vectors.emplace_back(l, f);
  }
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

FiberResult fiber_classes(const FiberQuery& q) {
  return FiberEnumerator(q.polarization).fiber(q.pairing, q.self_int, q.flags);
}

std::optional<FiberMinimum> min_fiber(const FiberEnumerator& e, std::int64_t self_int, FiberFlags flags,
                                      std::int64_t t_lo, std::int64_t t_hi) {
  if (t_lo < 1 || t_lo > t_hi)
    throw Error(ErrorKind::EmptyRange,
                "pairing range [" + std::to_string(t_lo) + ", " + std::to_string(t_hi) + "] is empty");
  for (std::int64_t t = t_lo; t <= t_hi; ++t) {
    FiberResult r = e.fiber(t, self_int, flags);
    if (!r.vectors.empty()) return FiberMinimum{t, std::move(r)};
  }
  return std::nullopt;
}

std::optional<FiberMinimum> min_fiber(const PolarizedClass& c, std::int64_t self_int, FiberFlags flags,
                                      std::int64_t t_lo, std::int64_t t_hi) {
  if (t_lo < 1 || t_lo > t_hi)
    throw Error(ErrorKind::EmptyRange,
                "pairing range [" + std::to_string(t_lo) + ", " + std::to_string(t_hi) + "] is empty");
  return min_fiber(FiberEnumerator(c), self_int, flags, t_lo, t_hi);
}

}  // namespace gonlat
