#include "e8_shells.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace gonlat::reference {

E8Shells::E8Shells() {
  // alpha1 = (1,-1,-1,-1,-1,-1,-1,1)/2, alpha2 = e1+e2, alpha3 = e2-e1, alpha_{k} = e_{k-1} - e_{k-2}.
  roots_[0] = {1, -1, -1, -1, -1, -1, -1, 1};
  roots_[1] = {2, 2, 0, 0, 0, 0, 0, 0};
  for (int k = 2; k < 8; ++k) {
    roots_[static_cast<std::size_t>(k)] = {};
    roots_[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 1)] = 2;
    roots_[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 2)] = -2;
  }
  const auto cartan = cartan_from_roots(*this);
  Eigen::Matrix<double, 8, 8> m;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = static_cast<double>(cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  const Eigen::Matrix<double, 8, 8> inv = m.inverse();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      cartan_inverse_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::llround(inv(i, j));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < 8; ++k) s += cartan[i][k] * cartan_inverse_[k][j];
      if (s != (i == j ? 1 : 0)) throw std::logic_error("E8 Cartan matrix is not unimodular");
    }
}

std::array<std::array<std::int64_t, 8>, 8> cartan_from_roots(const E8Shells& s) {
  std::array<std::array<std::int64_t, 8>, 8> c{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      std::int64_t d = 0;
      for (std::size_t k = 0; k < 8; ++k) d += s.root(i)[k] * s.root(j)[k];
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d / 4;
    }
  return c;
}

std::array<std::int64_t, 8> E8Shells::to_roots(const Doubled& y) const {
  // <alpha_j, x> = sum_i c_i <alpha_j, alpha_i>, so c = Cartan^-1 (A^T x).
  std::array<std::int64_t, 8> pairings{};
  for (std::size_t j = 0; j < 8; ++j) {
    std::int64_t d = 0;
    for (std::size_t k = 0; k < 8; ++k) d += roots_[j][k] * y[k];
    if (d % 4 != 0) throw std::logic_error("vector is not in E8");
    pairings[j] = d / 4;
  }
  std::array<std::int64_t, 8> c{};
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) c[i] += cartan_inverse_[i][j] * pairings[j];
  return c;
}

std::array<std::int64_t, 8> E8Shells::from_roots(const std::array<std::int64_t, 8>& c) const {
  std::array<std::int64_t, 8> y{};
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t k = 0; k < 8; ++k) y[k] += c[i] * roots_[i][k];
  return y;
}

namespace {

struct ShellScan {
  std::int64_t target;  // sum of y_k^2 == 4 * norm
  std::vector<Doubled>* out;
  Doubled y{};

  void run(int parity) {
    descend(0, 0, 0, parity);
  }

  void descend(int k, std::int64_t partial, std::int64_t sum, int parity) {
    if (k == 8) {
      if (partial == target && ((sum % 4) + 4) % 4 == 0) out->push_back(y);
      return;
    }
    const std::int64_t room = target - partial;
    auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(room)));
    while (bound * bound > room) --bound;
    while ((bound + 1) * (bound + 1) <= room) ++bound;
    for (std::int64_t v = -bound; v <= bound; ++v) {
      if (((v % 2) + 2) % 2 != parity) continue;
      y[static_cast<std::size_t>(k)] = static_cast<std::int8_t>(v);
      descend(k + 1, partial + v * v, sum + v, parity);
    }
  }
};

}  // namespace

const std::vector<Doubled>& E8Shells::shell(std::int64_t norm) {
  if (norm < 0 || norm % 2 != 0) throw std::invalid_argument("E8 norms are even and nonnegative");
  auto it = cache_.find(norm);
  if (it != cache_.end()) return it->second;
  std::vector<Doubled> out;
  if (norm == 0) {
    out.push_back(Doubled{});
  } else {
    ShellScan scan{4 * norm, &out};
    scan.run(0);
    scan.run(1);
  }
  return cache_.emplace(norm, std::move(out)).first->second;
}

}  // namespace gonlat::reference
