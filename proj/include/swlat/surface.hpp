#pragma once

#include <swlat/errors.hpp>
#include <swlat/lattice.hpp>

namespace swlat {

enum class SurfaceKind { GeneralTypeMinimal, Elliptic };
enum class TorsionTag { None, Z2, Larger };

/// Numerical description of a surface: a minimal general-type surface with
/// pg = q = 0, or a relatively minimal elliptic surface with at most two
/// multiple fibers, plus a number of blowups.
struct SurfaceModel {
  SurfaceKind kind = SurfaceKind::GeneralTypeMinimal;
  int ksq = 1;        // general type only: K0^2, between 1 and 9
  int m1 = 1, m2 = 1; // elliptic only: multiple-fiber multiplicities
  int pg = 0;
  int q = 0;
  TorsionTag torsion2 = TorsionTag::None;
  int blowups = 0;

  bool is_general_type() const { return kind == SurfaceKind::GeneralTypeMinimal; }
  bool is_elliptic() const { return kind == SurfaceKind::Elliptic; }
  bool is_dolgachev() const { return is_elliptic() && pg == 0; }

  /// Elliptic only: degree (in fiber-generator units) of the minimal-model
  /// canonical class, (pg+1)·m1·m2 − m1 − m2.
  Int canonical_fiber_degree() const;

  /// Throws UnsupportedModel if the description is outside the supported
  /// families, std::invalid_argument on nonsensical field values.
  void validate() const;
};

/// The intersection lattice of the (blown-up) surface with its distinguished
/// classes. For elliptic surfaces the fiber direction t and the classes
/// f = m1·m2·t, F1 = m2·t, F2 = m1·t are carried along.
struct SurfaceLattice {
  LatticeSpace space;
  ClassVector K0;
  std::vector<ClassVector> exceptionals;
  SurfaceModel model;

  bool elliptic = false;
  ClassVector t, f, F1, F2;  // elliptic only

  /// Canonical class of the blowup: K0 + E1 + ... + El. Always characteristic.
  ClassVector K_tilde() const;
  /// Square of the canonical class of the blowup, K0^2 - l.
  Int K_tilde_square() const;
};

/// Construct the canonical lattice presentation for a model:
/// general type: <1> + <-1>^(9-ksq) + <-1>^l with K0 = (3,1,...,1,0,...,0);
/// elliptic: a rank-2 block [[0,1],[1,par]] containing t = (1,0) plus
/// <-1>^l, with K0 = canonical_fiber_degree()·t. The parity par of the
/// complementary generator is chosen so that K0 + sum(Ei) is characteristic.
SurfaceLattice build(const SurfaceModel& model);

/// Accept an explicit presentation (general type only): the gram matrix, K0,
/// and exceptional classes are validated against the model invariants
/// (unimodular signature (1, n-1); Ei pairwise-orthogonal of square -1,
/// orthogonal to K0; K0 + sum(Ei) characteristic; K0^2 = ksq).
SurfaceLattice build_override(const SurfaceModel& model, GramMatrix gram, ClassVector K0,
                              std::vector<ClassVector> exceptionals);

/// Holomorphic Euler characteristic 1 - q + pg.
Int chi_O(const SurfaceModel& model);

/// n-th plurigenus of a general-type model: n(n-1)/2 · K0^2 + chi_O.
/// Requires n >= 2; independent of the number of blowups.
Int plurigenus(const SurfaceModel& model, int n);

/// Degree of a fiber-direction class d = c·t, normalized so deg f = 1:
/// returns c / (m1·m2). Throws if d is not proportional to t.
Rat fiber_degree(const SurfaceLattice& surface, const ClassVector& d);

/// Whether sigma·t is the class of an effective divisor supported on fibers,
/// i.e. sigma = a·m1·m2 + b·m2 + c·m1 with a >= 0, 0 <= b < m1, 0 <= c < m2;
/// equivalently sigma lies in the numerical semigroup generated by m1, m2.
bool effective_fiber_class(int m1, int m2, const Int& sigma);

}  // namespace swlat
