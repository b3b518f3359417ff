#ifndef GONLAT_LATTICE_HPP
#define GONLAT_LATTICE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gonlat/rational.hpp"

namespace gonlat {

struct Signature {
  int positive = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// An integral nondegenerate symmetric bilinear form on Z^rank.
///
/// Immutable; copies share storage. Besides the Gram matrix a lattice may
/// carry a few non-metric annotations: known isotropic vectors (used to bound
/// the isotropic search), a default reference class h, and, for lattices
/// produced by doubling, the base lattice they cover.
class Lattice {
 public:
  int rank() const;
  const IntMatrix& gram() const;
  Signature signature() const;
  const std::string& name() const;
  Integer determinant() const;

  bool is_hyperbolic() const;
  bool is_even() const;
  const std::vector<IntVector>& isotropic_seeds() const;
  const std::optional<IntVector>& default_ample() const;

  /// Base lattice when this one is its double L(2).
  const Lattice* covered_lattice() const;

  Lattice with_name(std::string name) const;
  Lattice with_seeds(std::vector<IntVector> seeds) const;
  Lattice with_ample(IntVector ample) const;

  /// Structural equality: same Gram matrix.
  friend bool operator==(const Lattice& a, const Lattice& b);

 private:
  struct Data;
  explicit Lattice(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static std::shared_ptr<Data> clone(const Data& src);
  std::shared_ptr<const Data> d_;

  friend Lattice make_lattice(const IntMatrix& gram);
  friend Lattice rescale(const Lattice& l, std::int64_t n);
  friend Lattice direct_sum(const std::vector<Lattice>& parts);
};

Signature signature_of(const IntMatrix& gram);

Lattice make_lattice(const IntMatrix& gram);
Lattice make_lattice(const std::vector<std::vector<std::int64_t>>& rows);

/// Named lattices: "U", "E8_minus", "enriques_num", "k3_invariant".
Lattice preset(std::string_view name);
std::vector<std::string> preset_names();

/// Form multiplied by n. rescale(L, 2) is recorded as the double of L.
Lattice rescale(const Lattice& l, std::int64_t n);

/// Orthogonal direct sum; seeds and default ample are carried over.
Lattice direct_sum(const std::vector<Lattice>& parts);

bool is_two_divisible(const Lattice& l);

class LatticeVector {
 public:
  LatticeVector(Lattice lattice, IntVector coords);
  LatticeVector(Lattice lattice, std::initializer_list<std::int64_t> coords);

  static LatticeVector zero(const Lattice& lattice);
  static LatticeVector basis(const Lattice& lattice, int index);

  const Lattice& lattice() const { return lattice_; }
  const IntVector& coords() const { return coords_; }
  std::int64_t operator[](Eigen::Index i) const { return coords_(i); }
  int size() const { return static_cast<int>(coords_.size()); }
  bool is_zero() const { return coords_.isZero(); }
  std::vector<std::int64_t> to_std() const;

  LatticeVector operator-() const;
  friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b);
  friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b);
  friend LatticeVector operator*(std::int64_t k, const LatticeVector& v);
  friend bool operator==(const LatticeVector& a, const LatticeVector& b);
  /// Lexicographic order on coordinates.
  friend bool operator<(const LatticeVector& a, const LatticeVector& b);

 private:
  Lattice lattice_;
  IntVector coords_;
};

std::int64_t inner(const Lattice& l, const LatticeVector& x, const LatticeVector& y);
std::int64_t inner(const LatticeVector& x, const LatticeVector& y);
std::int64_t norm(const LatticeVector& x);

bool lex_less(const IntVector& a, const IntVector& b);

struct Primitivity {
  std::int64_t content;
  std::int64_t divisibility;
};
Primitivity primitivity(const LatticeVector& x);

/// Coordinate-identity map into the doubled lattice.
LatticeVector pullback(const LatticeVector& y);
/// Multiplication by 2 into the base lattice; x must live in a doubled lattice.
LatticeVector pushforward(const LatticeVector& x);

/// A class C with C^2 > 0 together with a reference class h, h^2 > 0, C.h > 0.
class PolarizedClass {
 public:
  PolarizedClass(LatticeVector c, LatticeVector ample);
  /// Uses the lattice's default reference class.
  explicit PolarizedClass(LatticeVector c);

  const LatticeVector& vector() const { return c_; }
  const LatticeVector& ample() const { return h_; }
  const Lattice& lattice() const { return c_.lattice(); }
  std::int64_t self_int() const { return self_int_; }

 private:
  LatticeVector c_;
  LatticeVector h_;
  std::int64_t self_int_;
};

/// {"preset": name} | {"gram": [[...]], "isotropic_seeds": [[...]], "ample": [...]}
/// | {"sum": [spec, ...], "scale": n}
Lattice lattice_from_json(const nlohmann::json& spec);
nlohmann::json lattice_to_json(const Lattice& l);

LatticeVector vector_from_json(const Lattice& l, const nlohmann::json& j);
nlohmann::json vector_to_json(const LatticeVector& v);

}  // namespace gonlat

#endif  // GONLAT_LATTICE_HPP
