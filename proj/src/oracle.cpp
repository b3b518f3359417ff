#include "gonlat/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "gonlat/errors.hpp"

namespace gonlat {

std::uint64_t box_size(const std::vector<std::int64_t>& radii) {
  std::uint64_t total = 1;
  for (auto r : radii) {
    const auto side = static_cast<std::uint64_t>(2 * r + 1);
    if (total > std::numeric_limits<std::uint64_t>::max() / side) return std::numeric_limits<std::uint64_t>::max();
    total *= side;
  }
  return total;
}

std::vector<std::int64_t> certified_radii(const PolarizedClass& c, std::int64_t self_int, std::int64_t t_cap) {
  const Lattice& l = c.lattice();
  std::vector<std::int64_t> radii(static_cast<std::size_t>(l.rank()), 0);
  if (t_cap <= 0) return radii;
  const Rational c2(c.self_int());
  const Rational slack = Rational(t_cap) * t_cap / c2 - self_int;
  if (slack < 0) return radii;
  const auto inv = exact_inverse(cast_matrix<Rational>(l.gram()));
  if (!inv) throw Error(ErrorKind::Degenerate, "Gram matrix is singular");
  for (int i = 0; i < l.rank(); ++i) {
    const Rational ci(c.vector()[i]);
    const Rational along = abs(Rational(t_cap) * ci) / c2;
    const Rational perp = ci * ci / c2 - (*inv)(i, i);
    radii[static_cast<std::size_t>(i)] = to_int64(floor_plus_sqrt(along, slack * perp));
  }
  return radii;
}

OracleResult box_oracle(const PolarizedClass& c, std::int64_t self_int, FiberFlags flags,
                        const std::vector<std::int64_t>& radii, std::int64_t t_cap) {
  const Lattice& l = c.lattice();
  const int r = l.rank();
  if (static_cast<int>(radii.size()) != r)
    throw Error(ErrorKind::DimensionMismatch, "box needs one radius per coordinate");
  for (auto v : radii)
    if (v < 0) throw Error(ErrorKind::InvalidConfig, "box radius must be nonnegative");
  if (box_size(radii) > kMaxBoxPoints)
    throw Error(ErrorKind::BoxTooLarge, "box holds more than 1e8 points");

  const IntMatrix& g = l.gram();
  const IntVector gc = g * c.vector().coords();
  const IntVector gh = g * c.ample().coords();

  // inner coordinate: the widest one, scanned in a tight loop
  const int in = static_cast<int>(std::max_element(radii.begin(), radii.end()) - radii.begin());
  const std::int64_t rin = radii[static_cast<std::size_t>(in)];
  std::vector<int> outer;
  for (int i = 0; i < r; ++i)
    if (i != in) outer.push_back(i);

  // state for the outer coordinates, with x_in held at 0
  IntVector x = IntVector::Zero(r);
  for (int i : outer) x(i) = -radii[static_cast<std::size_t>(i)];
  IntVector gx = g * x;
  std::int64_t nrm = x.dot(gx);
  std::int64_t pc = gc.dot(x);
  std::int64_t ph = gh.dot(x);
  const std::int64_t gii = g(in, in);

  OracleResult out;
  while (true) {
    const std::int64_t s = gx(in);
    for (std::int64_t v = -rin; v <= rin; ++v) {
      if (nrm + v * (2 * s + gii * v) != self_int) continue;
      const std::int64_t t = pc + gc(in) * v;
      if (t <= 0 || t > t_cap) continue;
      if (flags.positive_side && ph + gh(in) * v <= 0) continue;
      IntVector f = x;
      f(in) = v;
      if (flags.primitive_only) {
        std::int64_t content = 0;
        for (int i = 0; i < r; ++i) content = std::gcd(content, f(i));
        if (content != 1) continue;
      }
      out[t].vectors.emplace_back(l, f);
    }
    // advance the outer odometer
    std::size_t k = 0;
    for (; k < outer.size(); ++k) {
      const int i = outer[k];
      const std::int64_t ri = radii[static_cast<std::size_t>(i)];
      const std::int64_t delta = x(i) < ri ? 1 : -2 * ri;
      nrm += 2 * delta * gx(i) + delta * delta * g(i, i);
      gx += delta * g.col(i);
      pc += delta * gc(i);
      ph += delta * gh(i);
      x(i) += delta;
      if (delta == 1) break;
    }
    if (k == outer.size()) break;
  }

  const bool certified = [&]() {
    const auto need = certified_radii(c, self_int, t_cap);
    for (int i = 0; i < r; ++i)
      if (radii[static_cast<std::size_t>(i)] < need[static_cast<std::size_t>(i)]) return false;
    return true;
  }();
  for (auto& [t, res] : out) {
    std::sort(res.vectors.begin(), res.vectors.end());
    res.exhaustive = certified;
  }
  return out;
}

OracleResult box_oracle(const PolarizedClass& c, std::int64_t self_int, FiberFlags flags, std::int64_t radius,
                        std::int64_t t_cap) {
  if (radius < 1) throw Error(ErrorKind::InvalidConfig, "box radius must be positive");
  return box_oracle(c, self_int, flags, std::vector<std::int64_t>(static_cast<std::size_t>(c.lattice().rank()), radius),
                    t_cap);
}

}  // namespace gonlat
