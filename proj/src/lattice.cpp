#include "gonlat/lattice.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "gonlat/errors.hpp"
#include "gonlat/exact.hpp"

namespace gonlat {

struct Lattice::Data {
  IntMatrix gram;
  Signature signature;
  Integer determinant;
  std::string name;
  std::vector<IntVector> seeds;
  std::optional<IntVector> ample;
  std::optional<Lattice> base;

  mutable std::once_flag double_once;
  mutable std::shared_ptr<const Data> double_cache;
};

namespace {

Signature count_signs(const std::vector<Rational>& diag) {
  Signature s;
  for (const auto& d : diag) {
    if (d > 0) ++s.positive;
    else if (d < 0) ++s.negative;
  }
  return s;
}

}  // namespace

Signature signature_of(const IntMatrix& gram) { return count_signs(congruence_diagonal(gram)); }

Lattice make_lattice(const IntMatrix& gram) {
  if (gram.rows() != gram.cols() || gram.rows() == 0)
    throw Error(ErrorKind::NonSymmetric, "Gram matrix must be square and nonempty");
  if (gram != gram.transpose()) throw Error(ErrorKind::NonSymmetric, "Gram matrix is not symmetric");
  auto d = std::make_shared<Lattice::Data>();
  d->gram = gram;
  d->determinant = bareiss_determinant(gram);
  if (d->determinant == 0) throw Error(ErrorKind::Degenerate, "Gram matrix is singular");
  d->signature = signature_of(gram);
  return Lattice(std::move(d));
}

Lattice make_lattice(const std::vector<std::vector<std::int64_t>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  IntMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n)
      throw Error(ErrorKind::NonSymmetric, "Gram matrix rows must all have length " + std::to_string(n));
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rows[i][j];
  }
  return make_lattice(g);
}

int Lattice::rank() const { return static_cast<int>(d_->gram.rows()); }
const IntMatrix& Lattice::gram() const { return d_->gram; }
Signature Lattice::signature() const { return d_->signature; }
const std::string& Lattice::name() const { return d_->name; }
Integer Lattice::determinant() const { return d_->determinant; }

bool Lattice::is_hyperbolic() const { return d_->signature == Signature{1, rank() - 1}; }

bool Lattice::is_even() const {
  for (Eigen::Index i = 0; i < d_->gram.rows(); ++i)
    if (d_->gram(i, i) % 2 != 0) return false;
  return true;
}

const std::vector<IntVector>& Lattice::isotropic_seeds() const { return d_->seeds; }
const std::optional<IntVector>& Lattice::default_ample() const { return d_->ample; }
const Lattice* Lattice::covered_lattice() const { return d_->base ? &*d_->base : nullptr; }

std::shared_ptr<Lattice::Data> Lattice::clone(const Data& src) {
  auto d = std::make_shared<Lattice::Data>();
  d->gram = src.gram;
  d->signature = src.signature;
  d->determinant = src.determinant;
  d->name = src.name;
  d->seeds = src.seeds;
  d->ample = src.ample;
  d->base = src.base;
  return d;
}

Lattice Lattice::with_name(std::string name) const {
  auto d = clone(*d_);
  d->name = std::move(name);
  return Lattice(std::move(d));
}

Lattice Lattice::with_seeds(std::vector<IntVector> seeds) const {
  for (const auto& s : seeds) {
    if (s.size() != rank()) throw Error(ErrorKind::DimensionMismatch, "isotropic seed has wrong length");
    if (s.isZero() || s.dot(d_->gram * s) != 0)
      throw Error(ErrorKind::InvalidConfig, "isotropic seed must be a nonzero vector of square 0");
  }
  auto d = clone(*d_);
  d->seeds = std::move(seeds);
  return Lattice(std::move(d));
}

Lattice Lattice::with_ample(IntVector ample) const {
  if (ample.size() != rank()) throw Error(ErrorKind::DimensionMismatch, "reference class has wrong length");
  if (ample.dot(d_->gram * ample) <= 0)
    throw Error(ErrorKind::NonPositivePolarization, "reference class must have positive square");
  auto d = clone(*d_);
  d->ample = std::move(ample);
  return Lattice(std::move(d));
}

bool operator==(const Lattice& a, const Lattice& b) {
  return a.d_ == b.d_ || (a.d_->gram.rows() == b.d_->gram.rows() && a.d_->gram == b.d_->gram);
}

Lattice rescale(const Lattice& l, std::int64_t n) {
  if (n == 0) throw Error(ErrorKind::ZeroScale, "scale factor must be nonzero");
  auto build = [&]() {
    auto d = std::make_shared<Lattice::Data>();
    d->gram = l.gram() * n;
    d->signature = n > 0 ? l.signature() : Signature{l.signature().negative, l.signature().positive};
    d->determinant = l.determinant();
    for (int i = 0; i < l.rank(); ++i) d->determinant *= n;
    d->seeds = l.isotropic_seeds();
    if (n > 0) d->ample = l.default_ample();
    if (!l.name().empty()) {
      if (n == 2 && l.name() == "enriques_num") d->name = "k3_invariant";
      else d->name = l.name() + "(" + std::to_string(n) + ")";
    }
    if (n == 2) d->base = l;
    return d;
  };
  if (n != 2) return Lattice(build());
  std::call_once(l.d_->double_once, [&]() { l.d_->double_cache = build(); });
  return Lattice(l.d_->double_cache);
}

Lattice direct_sum(const std::vector<Lattice>& parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidConfig, "direct sum of no lattices");
  int total = 0;
  for (const auto& p : parts) total += p.rank();
  IntMatrix g = IntMatrix::Zero(total, total);
  std::vector<IntVector> seeds;
  std::optional<IntVector> ample;
  std::string name;
  int offset = 0;
  for (const auto& p : parts) {
    g.block(offset, offset, p.rank(), p.rank()) = p.gram();
    for (const auto& s : p.isotropic_seeds()) {
      IntVector padded = IntVector::Zero(total);
      padded.segment(offset, p.rank()) = s;
      seeds.push_back(padded);
    }
    if (!ample && p.default_ample() && p.signature().positive > 0) {
      IntVector padded = IntVector::Zero(total);
      padded.segment(offset, p.rank()) = *p.default_ample();
      ample = padded;
    }
    if (!name.empty()) name += "+";
    name += p.name().empty() ? "L" : p.name();
    offset += p.rank();
  }
  auto d = std::make_shared<Lattice::Data>();
  d->gram = g;
  d->determinant = 1;
  for (const auto& p : parts) d->determinant *= p.determinant();
  Signature s;
  for (const auto& p : parts) {
    s.positive += p.signature().positive;
    s.negative += p.signature().negative;
  }
  d->signature = s;
  d->seeds = std::move(seeds);
  d->ample = std::move(ample);
  d->name = std::move(name);
  return Lattice(std::move(d));
}

namespace {

Lattice build_u() {
  IntMatrix g(2, 2);
  g << 0, 1, 1, 0;
  IntVector e(2), f(2), h(2);
  e << 1, 0;
  f << 0, 1;
  h << 1, 1;
  return make_lattice(g).with_name("U").with_seeds({e, f}).with_ample(h);
}

Lattice build_e8_minus() {
  // Bourbaki numbering, 1-based node labels
  static constexpr int kEdges[7][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  IntMatrix g = IntMatrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) g(i, i) = -2;
  for (const auto& e : kEdges) {
    g(e[0] - 1, e[1] - 1) = 1;
    g(e[1] - 1, e[0] - 1) = 1;
  }
  return make_lattice(g).with_name("E8_minus");
}

}  // namespace

Lattice preset(std::string_view name) {
  static const Lattice u = build_u();
  static const Lattice e8 = build_e8_minus();
  static const Lattice enriques = direct_sum({u, e8}).with_name("enriques_num");
  static const Lattice k3 = rescale(enriques, 2);
  if (name == "U") return u;
  if (name == "E8_minus") return e8;
  if (name == "enriques_num") return enriques;
  if (name == "k3_invariant") return k3;
  throw Error(ErrorKind::UnknownPreset, "unknown lattice preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"U", "E8_minus", "enriques_num", "k3_invariant"}; }

bool is_two_divisible(const Lattice& l) {
  const IntMatrix& g = l.gram();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    if (g(i, i) % 4 != 0) return false;
    for (Eigen::Index j = i + 1; j < g.cols(); ++j)
      if (g(i, j) % 2 != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- vectors

LatticeVector::LatticeVector(Lattice lattice, IntVector coords)
    : lattice_(std::move(lattice)), coords_(std::move(coords)) {
  if (coords_.size() != lattice_.rank())
    throw Error(ErrorKind::DimensionMismatch, "vector has " + std::to_string(coords_.size()) +
                                                  " coordinates, lattice rank is " +
                                                  std::to_string(lattice_.rank()));
}

LatticeVector::LatticeVector(Lattice lattice, std::initializer_list<std::int64_t> coords)
    : LatticeVector(std::move(lattice), IntVector(Eigen::Map<const IntVector>(
                                            coords.begin(), static_cast<Eigen::Index>(coords.size())))) {}

LatticeVector LatticeVector::zero(const Lattice& lattice) {
  return LatticeVector(lattice, IntVector(IntVector::Zero(lattice.rank())));
}

LatticeVector LatticeVector::basis(const Lattice& lattice, int index) {
  IntVector v = IntVector::Zero(lattice.rank());
  v(index) = 1;
  return LatticeVector(lattice, v);
}

std::vector<std::int64_t> LatticeVector::to_std() const {
  return std::vector<std::int64_t>(coords_.data(), coords_.data() + coords_.size());
}

LatticeVector LatticeVector::operator-() const { return LatticeVector(lattice_, IntVector(-coords_)); }

namespace {
void require_same(const LatticeVector& a, const LatticeVector& b) {
  if (!(a.lattice() == b.lattice()))
    throw Error(ErrorKind::DimensionMismatch, "vectors belong to different lattices");
}
}  // namespace

LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
  require_same(a, b);
  return LatticeVector(a.lattice_, IntVector(a.coords_ + b.coords_));
}

LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
  require_same(a, b);
  return LatticeVector(a.lattice_, IntVector(a.coords_ - b.coords_));
}

LatticeVector operator*(std::int64_t k, const LatticeVector& v) {
  return LatticeVector(v.lattice_, IntVector(k * v.coords_));
}

bool operator==(const LatticeVector& a, const LatticeVector& b) {
  return a.lattice_ == b.lattice_ && a.coords_ == b.coords_;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

bool operator<(const LatticeVector& a, const LatticeVector& b) { return lex_less(a.coords_, b.coords_); }

std::int64_t inner(const Lattice& l, const LatticeVector& x, const LatticeVector& y) {
  if (x.size() != l.rank() || y.size() != l.rank() || !(x.lattice() == l) || !(y.lattice() == l))
    throw Error(ErrorKind::DimensionMismatch, "vectors do not belong to the lattice");
  return x.coords().dot(l.gram() * y.coords());
}

std::int64_t inner(const LatticeVector& x, const LatticeVector& y) { return inner(x.lattice(), x, y); }

std::int64_t norm(const LatticeVector& x) { return inner(x, x); }

Primitivity primitivity(const LatticeVector& x) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroVector, "primitivity of the zero vector");
  std::int64_t content = 0;
  for (Eigen::Index i = 0; i < x.coords().size(); ++i) content = std::gcd(content, x.coords()(i));
  const IntVector row = x.lattice().gram() * x.coords();
  std::int64_t div = 0;
  for (Eigen::Index i = 0; i < row.size(); ++i) div = std::gcd(div, row(i));
  return {content, div};
}

LatticeVector pullback(const LatticeVector& y) {
  if (y.lattice().covered_lattice() != nullptr)
    throw Error(ErrorKind::LatticePairMismatch, "pullback expects a class on the base lattice");
  return LatticeVector(rescale(y.lattice(), 2), y.coords());
}

LatticeVector pushforward(const LatticeVector& x) {
  const Lattice* base = x.lattice().covered_lattice();
  if (base == nullptr) throw Error(ErrorKind::LatticePairMismatch, "pushforward expects a class on a doubled lattice");
  return LatticeVector(*base, IntVector(2 * x.coords()));
}

// ---------------------------------------------------------------- polarization

namespace {
LatticeVector default_ample_of(const LatticeVector& c) {
  const auto& h = c.lattice().default_ample();
  if (!h) throw Error(ErrorKind::InvalidConfig, "lattice has no default reference class; pass one explicitly");
  return LatticeVector(c.lattice(), *h);
}
}  // namespace

PolarizedClass::PolarizedClass(LatticeVector c, LatticeVector ample)
    : c_(std::move(c)), h_(std::move(ample)), self_int_(0) {
  if (!(c_.lattice() == h_.lattice()))
    throw Error(ErrorKind::LatticePairMismatch, "class and reference class live in different lattices");
  self_int_ = norm(c_);
  if (self_int_ <= 0)
    throw Error(ErrorKind::NonPositivePolarization, "class has C^2 = " + std::to_string(self_int_) + " <= 0");
  if (norm(h_) <= 0) throw Error(ErrorKind::NonPositivePolarization, "reference class has h^2 <= 0");
  if (inner(c_, h_) <= 0) throw Error(ErrorKind::NonPositivePolarization, "class has C.h <= 0");
}

PolarizedClass::PolarizedClass(LatticeVector c) : PolarizedClass(c, default_ample_of(c)) {}

// ---------------------------------------------------------------- json

namespace {

IntVector int_vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidConfig, "expected an integer array");
  IntVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw Error(ErrorKind::InvalidConfig, "expected an integer array");
    v(static_cast<Eigen::Index>(i)) = j[i].get<std::int64_t>();
  }
  return v;
}

}  // namespace

Lattice lattice_from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw Error(ErrorKind::InvalidConfig, "lattice spec must be a JSON object");
  Lattice l = [&]() {
    if (spec.contains("preset")) return preset(spec.at("preset").get<std::string>());
    if (spec.contains("gram")) {
      const auto& rows = spec.at("gram");
      if (!rows.is_array()) throw Error(ErrorKind::InvalidConfig, "\"gram\" must be an array of rows");
      std::vector<std::vector<std::int64_t>> g;
      for (const auto& r : rows) {
        IntVector v = int_vector_from_json(r);
        g.emplace_back(v.data(), v.data() + v.size());
      }
      return make_lattice(g);
    }
    if (spec.contains("sum")) {
      const auto& parts = spec.at("sum");
      if (!parts.is_array() || parts.empty())
        throw Error(ErrorKind::InvalidConfig, "\"sum\" must be a nonempty array of lattice specs");
      std::vector<Lattice> ls;
      for (const auto& p : parts) ls.push_back(lattice_from_json(p));
      return ls.size() == 1 ? ls.front() : direct_sum(ls);
    }
    throw Error(ErrorKind::InvalidConfig, "lattice spec needs one of \"preset\", \"gram\", \"sum\"");
  }();
  if (spec.contains("scale")) {
    const auto n = spec.at("scale").get<std::int64_t>();
    if (n != 1) l = rescale(l, n);
  }
  if (spec.contains("isotropic_seeds")) {
    std::vector<IntVector> seeds;
    for (const auto& s : spec.at("isotropic_seeds")) seeds.push_back(int_vector_from_json(s));
    l = l.with_seeds(std::move(seeds));
  }
  if (spec.contains("ample")) l = l.with_ample(int_vector_from_json(spec.at("ample")));
  if (spec.contains("name")) l = l.with_name(spec.at("name").get<std::string>());
  return l;
}

nlohmann::json lattice_to_json(const Lattice& l) {
  nlohmann::json gram = nlohmann::json::array();
  for (int i = 0; i < l.rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < l.rank(); ++j) row.push_back(l.gram()(i, j));
    gram.push_back(row);
  }
  return {
      {"name", l.name()},
      {"rank", l.rank()},
      {"gram", gram},
      {"signature", {l.signature().positive, l.signature().negative}},
      {"determinant", l.determinant().str()},
      {"even", l.is_even()},
      {"two_divisible", is_two_divisible(l)},
  };
}

LatticeVector vector_from_json(const Lattice& l, const nlohmann::json& j) {
  return LatticeVector(l, int_vector_from_json(j));
}

nlohmann::json vector_to_json(const LatticeVector& v) { return v.to_std(); }

}  // namespace gonlat
