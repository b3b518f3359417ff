#include "slice_oracle.hpp"

#include <algorithm>
#include <numeric>

#include "gonlat/oracle.hpp"

namespace gonlat::reference {

std::optional<SliceOracle::Result> SliceOracle::run(const PolarizedClass& c, std::int64_t self_int,
                                                    std::int64_t t_cap, FiberFlags flags,
                                                    std::int64_t max_shell_norm) {
  const IntVector& cv = c.vector().coords();
  const IntMatrix& g = c.lattice().gram();
  std::array<std::int64_t, 8> w{};
  for (std::size_t i = 0; i < 8; ++i) w[i] = cv(static_cast<Eigen::Index>(i) + 2);
  const auto yw = shells_.from_roots(w);
  std::int64_t w_norm4 = 0;  // 4 |w|^2
  for (auto x : yw) w_norm4 += x * x;

  Result out;
  const auto radii = certified_radii(c, self_int, t_cap);
  const std::int64_t ra = radii[0], rb = radii[1];
  for (std::int64_t a = -ra; a <= ra; ++a) {
    for (std::int64_t b = -rb; b <= rb; ++b) {
      const std::int64_t norm = 2 * a * b - self_int;
      if (norm < 0 || norm % 2 != 0) continue;
      const std::int64_t base = a * cv(1) + b * cv(0);
      // s = F.C - base = v.w must lie in [1 - base, t_cap - base] and |s| <= sqrt(norm |w|^2).
      const std::int64_t lo = 1 - base, hi = t_cap - base;
      if (hi < lo) continue;
      const std::int64_t closest = lo > 0 ? lo : (hi < 0 ? hi : 0);
      if (4 * closest * closest > norm * w_norm4) continue;
      if (norm > max_shell_norm) return std::nullopt;
      for (const auto& y : shells_.shell(norm)) {
        std::int64_t dot = 0;
        for (std::size_t k = 0; k < 8; ++k) dot += y[k] * yw[k];
        const std::int64_t s = -dot / 4;
        if (s < lo || s > hi) continue;
        IntVector f(10);
        f(0) = a;
        f(1) = b;
        const auto r = shells_.to_roots(y);
        for (std::size_t k = 0; k < 8; ++k) f(static_cast<Eigen::Index>(k) + 2) = r[k];
        if (flags.primitive_only) {
          std::int64_t content = 0;
          for (Eigen::Index k = 0; k < 10; ++k) content = std::gcd(content, f(k));
          if (content != 1) continue;
        }
        if (flags.positive_side && (f.transpose() * g * c.ample().coords()).value() <= 0) continue;
        out[base + s].push_back(f);
      }
    }
  }
  for (auto& [t, vs] : out)
    std::sort(vs.begin(), vs.end(), [](const IntVector& x, const IntVector& y) {
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    });
  return out;
}

std::vector<PolarizedClass> a1_classes() {
  const Lattice l = preset("enriques_num");
  std::vector<PolarizedClass> out;
  std::vector<IntVector> e8_parts{IntVector::Zero(8)};
  for (int i = 0; i < 8; ++i)
    for (std::int64_t x = -2; x <= 2; ++x) {
      if (x == 0) continue;
      IntVector v = IntVector::Zero(8);
      v(i) = x;
      e8_parts.push_back(v);
      for (int j = i + 1; j < 8; ++j)
        for (std::int64_t z = -2; z <= 2; ++z) {
          if (z == 0) continue;
          IntVector u = v;
          u(j) = z;
          e8_parts.push_back(u);
        }
    }
  for (std::int64_t a = 1; a <= 4; ++a)
    for (std::int64_t b = 1; b <= 4; ++b)
      for (const auto& v : e8_parts) {
        IntVector x(10);
        x << a, b, v;
        std::int64_t content = 0;
        for (auto k : x) content = std::gcd(content, k);
        if (content != 1) continue;
        const std::int64_t c2 = (x.transpose() * l.gram() * x).value();
        if (c2 <= 0 || c2 > 24) continue;
        out.emplace_back(LatticeVector(l, x));
      }
  return out;
}

}  // namespace gonlat::reference
