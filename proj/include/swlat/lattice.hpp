#pragma once

#include <swlat/numeric.hpp>

#include <optional>
#include <tuple>
#include <vector>

namespace swlat {

using GramMatrix = std::vector<std::vector<Int>>;
using IntMatrix = std::vector<std::vector<Int>>;

/// Integer cohomology class in a fixed basis. Plain coordinate tuple with
/// componentwise arithmetic; the bilinear form lives on LatticeSpace.
class ClassVector {
 public:
  ClassVector() = default;
  explicit ClassVector(std::vector<Int> coords) : c_(std::move(coords)) {}
  static ClassVector zero(int rank) { return ClassVector(std::vector<Int>(rank, Int(0))); }

  int rank() const { return static_cast<int>(c_.size()); }
  const Int& operator[](int i) const { return c_[i]; }
  Int& operator[](int i) { return c_[i]; }
  const std::vector<Int>& coords() const { return c_; }

  bool is_zero() const {
    for (const Int& x : c_)
      if (x != 0) return false;
    return true;
  }

  ClassVector operator+(const ClassVector& o) const;
  ClassVector operator-(const ClassVector& o) const;
  ClassVector operator-() const;
  ClassVector operator*(const Int& k) const;

  bool operator==(const ClassVector& o) const { return c_ == o.c_; }
  bool operator!=(const ClassVector& o) const { return c_ != o.c_; }
  bool operator<(const ClassVector& o) const;  // lexicographic

  /// Divide every coordinate by k; throws unless all are divisible.
  ClassVector divided_by(const Int& k) const;

  /// Canonical sign representative of {v, -v}: first nonzero coordinate > 0.
  ClassVector lex_positive() const;

  std::string str() const;

 private:
  std::vector<Int> c_;
};

/// Rational point of the same coordinate space (used for chamber points,
/// enumeration anchors, ray representatives). Kept unnormalized: any positive
/// rational multiple names the same ray.
class RationalVector {
 public:
  RationalVector() = default;
  explicit RationalVector(std::vector<Rat> coords) : c_(std::move(coords)) {}
  explicit RationalVector(const ClassVector& v);

  int rank() const { return static_cast<int>(c_.size()); }
  const Rat& operator[](int i) const { return c_[i]; }
  Rat& operator[](int i) { return c_[i]; }
  const std::vector<Rat>& coords() const { return c_; }

  RationalVector operator+(const RationalVector& o) const;
  RationalVector operator-(const RationalVector& o) const;
  RationalVector operator-() const;
  RationalVector operator*(const Rat& k) const;

  bool operator==(const RationalVector& o) const { return c_ == o.c_; }
  bool operator!=(const RationalVector& o) const { return c_ != o.c_; }

  /// Scale by the lcm of denominators to the primitive integer point on the
  /// same ray (direction preserved).
  ClassVector scaled_to_integer() const;

  std::string str() const;

 private:
  std::vector<Rat> c_;
};

/// Unimodular integral lattice of signature (1, rank-1): the intersection
/// form on middle cohomology. Owns the Gram matrix; all pairings are exact.
class LatticeSpace {
 public:
  /// Validates: square symmetric integer matrix, |det| = 1, signature (1, n-1).
  static LatticeSpace checked(GramMatrix gram);

  /// Skips the unimodularity/signature checks (still requires square and
  /// symmetric). Exists so tests can build deliberately broken fixtures.
  static LatticeSpace unchecked(GramMatrix gram);

  int rank() const { return rank_; }
  const GramMatrix& gram() const { return gram_; }

  Int pairing(const ClassVector& v, const ClassVector& w) const;
  Rat pairing(const ClassVector& v, const RationalVector& w) const;
  Rat pairing(const RationalVector& v, const RationalVector& w) const;
  Int square(const ClassVector& v) const { return pairing(v, v); }
  Rat square(const RationalVector& v) const { return pairing(v, v); }

  /// v is characteristic iff v.x = x.x (mod 2) for every lattice x.
  bool is_characteristic(const ClassVector& v) const;

  /// Reflection in a (-1)-class n: v + 2(v.n)n. Requires n.n = -1.
  ClassVector reflect(const ClassVector& v, const ClassVector& n) const;
  RationalVector reflect(const RationalVector& v, const ClassVector& n) const;

  /// True iff M^T G M = G for the column-action M.
  bool is_isometry(const IntMatrix& m) const;
  ClassVector apply(const IntMatrix& m, const ClassVector& v) const;

  /// All lattice vectors L with L.L = s and |L.anchor| <= pairing_bound,
  /// optionally restricted to characteristic vectors. anchor must have
  /// positive square. Complete (Fincke-Pohst over the positive-definite
  /// companion form 2(L.a)^2/a^2 - L^2), returned in lexicographic order.
  std::vector<ClassVector> enumerate_with_square(const Int& s, const RationalVector& anchor,
                                                 const Rat& pairing_bound,
                                                 bool characteristic_only) const;

  /// Witnesses against the signature-(1, n-1) shape near v: vectors w with
  /// |w_i| <= radius, w.v = 0 and w.w > 0. Empty on a true (1, n-1) lattice
  /// whenever v.v > 0.
  std::vector<ClassVector> hodge_index_violations(const ClassVector& v, const Int& radius) const;

  /// (positives, negatives, zeros) of the symmetric matrix, exact.
  static std::tuple<int, int, int> signature_of(const GramMatrix& gram);
  static Int determinant_of(const GramMatrix& gram);

  /// Parity class of characteristic vectors mod 2 (unique in a unimodular
  /// lattice); empty optional when the mod-2 system is singular.
  const std::optional<std::vector<int>>& characteristic_parity() const { return char_parity_; }

 private:
  LatticeSpace(GramMatrix gram, bool validate);

  void check_vector(const ClassVector& v) const;
  void check_vector(const RationalVector& v) const;

  int rank_ = 0;
  GramMatrix gram_;
  std::optional<std::vector<int>> char_parity_;
};

}  // namespace swlat
