#pragma once

#include <swlat/surface.hpp>

namespace swlat {

/// One basic class: a characteristic vector L together with the square-root
/// bookkeeping class Xi (2·Xi = L + K_tilde in the free lattice), the SW
/// sign, the count of the underlying enumeration (elliptic only, 1 otherwise),
/// and the expected dimension (L^2 - K_tilde^2)/4, always 0 for emitted sets.
struct SpincBasicClass {
  ClassVector L;
  ClassVector Xi;
  Int sw = 1;
  Int multiplicity = 1;
  Int index = 0;
};

bool operator==(const SpincBasicClass& a, const SpincBasicClass& b);

/// Canonically ordered (lexicographic on (L, Xi)) duplicate-free list of
/// basic classes over a surface lattice. Closed under the involution
/// (L, Xi) -> (-L, Xi - L).
struct BasicClassSet {
  std::vector<SpincBasicClass> classes;
  SurfaceLattice surface;

  bool contains(const ClassVector& L, const ClassVector& Xi) const;
  /// Sorted list restricted to the L components (with repetitions removed).
  std::vector<ClassVector> l_values() const;
};

/// The two basic classes of a minimal general-type surface with pg = q = 0:
/// (-K0, Xi = 0, sw = +1) and (K0, Xi = K0, sw = (-1)^(q+pg)).
BasicClassSet minimal_general_type(const SurfaceLattice& surface);

/// Basic classes of a minimal elliptic surface with pg >= 1 (q = 0, coprime
/// multiplicities): K0 - 2D for D = a·f + b·F1 + c·F2 over 0 <= a <= pg-1,
/// 0 <= b < m1, 0 <= c < m2, with multiplicity binom(pg-1, a). The sw sign is
/// +1 on the nonnegative-degree representative of each +-pair and
/// (-1)^(1+pg) on its partner.
BasicClassSet elliptic_pg_positive(const SurfaceLattice& surface);

/// Basic classes of a Dolgachev surface (minimal elliptic, pg = q = 0, two
/// multiple fibers of coprime multiplicities >= 2): K0 - 2D over effective
/// fiber classes D with deg(K0 - 2D) >= 0, each of multiplicity one, closed
/// up under negation. Positive-degree classes carry sw = +1, partners -1.
BasicClassSet dolgachev(const SurfaceLattice& surface);

/// Blowup formula: for each class (L, Xi, sw, mult) of the input set and each
/// sign vector eps in {+-1}^k over the exceptional classes of `blown_up` that
/// are new relative to the input lattice: emit (L + sum eps_i E_i,
/// Xi + sum_{eps_i = +1} E_i, sw·prod(eps), mult). Cardinality multiplies by 2^k.
BasicClassSet blowup(const BasicClassSet& set, const SurfaceLattice& blown_up);

/// Build the model's lattice and dispatch to the matching enumerator,
/// applying the blowup formula for model.blowups > 0.
BasicClassSet enumerate_basic_classes(const SurfaceModel& model);

/// Criterion for a characteristic L on a minimal elliptic surface to admit
/// irreducible monopole solutions: L^2 >= K0^2 and either (K0+L)/2 is
/// effective with omega·L < 0, or (K0-L)/2 is effective with omega·L > 0.
/// The boundary omega·L = 0 is classified true exactly when L = K0 = 0.
/// Throws if (K0 +- L)/2 is not integral.
bool admits_irreducible_solutions(const SurfaceLattice& surface, const ClassVector& L,
                                  const ClassVector& omega);

/// True iff every class in the set has index 0.
bool check_simple_type(const BasicClassSet& set);

}  // namespace swlat
