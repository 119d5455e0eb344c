#pragma once

#include <swlat/basic_classes.hpp>

#include <optional>
#include <utility>

namespace swlat {

/// The set of pairwise differences Xi_1 - Xi_2 over distinct basic classes.
/// Closed under negation, never contains zero, sorted lexicographically.
struct DifferenceSet {
  std::vector<ClassVector> elements;

  bool contains(const ClassVector& v) const;
  size_t size() const { return elements.size(); }
};

/// Build the difference set of a basic-class set with at least two classes.
DifferenceSet difference_set(const BasicClassSet& set);

/// The +/- pair recovered for the canonical class. `plus` is the
/// lexicographically positive representative. When no square-zero
/// difference exists at all, the canonical class is zero in the free
/// lattice (it may be a nonzero torsion class) and `zero_or_torsion`
/// is set with both vectors zero.
struct RecoveredK0 {
  ClassVector plus;
  ClassVector minus;
  bool zero_or_torsion = false;
};

/// Recover the canonical pair from a difference set.
///
/// With `ksq_positive` the pair is the unique +/- pair of maximal square
/// (general-type data). Otherwise the square-zero differences must all be
/// integer multiples of one primitive class, and the pair of maximal
/// multiple is returned (fibered data); no square-zero differences at all
/// yields the zero_or_torsion result. Any ambiguity — several pairs at the
/// maximum, or non-proportional square-zero differences — raises
/// AmbiguousRecovery, signalling input outside the supported shapes.
RecoveredK0 recover_K0(const LatticeSpace& space, const DifferenceSet& diffs, bool ksq_positive);

/// Square -1 differences orthogonal to a canonical class of positive
/// square: exactly the exceptional classes of the blowup. Returns one
/// lexicographically positive representative per +/- pair, sorted.
std::vector<ClassVector> recover_exceptionals(const LatticeSpace& space, const DifferenceSet& diffs,
                                              const ClassVector& K0);

/// Exceptional classes of fibered data (canonical square zero). Square -1
/// differences are candidates; a candidate E qualifies exactly when the
/// reflection through E maps the difference set onto itself, which filters
/// out the square -1 classes with a fiber component. Returns lex-positive
/// representatives, sorted.
std::vector<ClassVector> recover_exceptionals_fibered(const LatticeSpace& space,
                                                      const DifferenceSet& diffs);

/// Outcome of testing whether a square -1 class behaves like an exceptional
/// class of a blowup. Either it is one (up to sign), or a witness class is
/// produced that the difference set would have to contain but does not.
struct SummandVerdict {
  std::optional<int> exceptional_index;  // engaged: n == +/- Es[index]
  std::optional<ClassVector> witness;    // engaged: class absent from the difference set
  bool is_exceptional() const { return exceptional_index.has_value(); }
};

/// Classify a square -1 difference class n of general-type data (K0^2 > 0).
/// n must lie in the difference set. If n is not +/- an exceptional class,
/// the reflection of K0 through n is a class the difference set of genuine
/// surface data never contains; it is returned as the contradiction witness.
SummandVerdict classify_summand_class(const BasicClassSet& set, const ClassVector& K0,
                                      const std::vector<ClassVector>& Es, const ClassVector& n);

/// Classify a square -1 class n = T + e*E_j on fibered data (K0^2 = 0),
/// where T must be a multiple of the fiber direction and e = +/-1. T = 0
/// means n is exceptional. Otherwise shifting every basic degree r by -2T
/// must eventually leave the (finite) degree set; the first departure,
/// scanning degrees downward, is returned as the witness.  Expects the
/// set in enumeration coordinates (fiber class first).
SummandVerdict classify_summand_class_fibered(const BasicClassSet& set, const ClassVector& K0,
                                              const std::vector<ClassVector>& Es,
                                              const ClassVector& n);

/// Compatibility of two candidate exceptional-class sets in one lattice:
/// every class of the second is +/- a class of the first, or orthogonal to
/// all of them.
bool summand_sets_compatible(const LatticeSpace& space, const std::vector<ClassVector>& set1,
                             const std::vector<ClassVector>& set2);

/// Recover the multiple-fiber multiplicities (m1 <= m2) of a minimal
/// elliptic surface with the given pg >= 1 from its basic-class set (in
/// enumeration coordinates). The recovered pair is validated by
/// re-enumeration; inconsistent degree data raises AmbiguousRecovery.
std::pair<int, int> recover_multiplicities(const BasicClassSet& set, int pg);

/// Plurigenera P_n for n = 2..n_max of general-type data, computed from the
/// recovered canonical square: P_n = n(n-1)/2 * K0^2 + chi. Requires the
/// maximal difference square to be positive; fibered data is rejected with
/// a pointer to multiplicity recovery.
std::vector<std::pair<int, Int>> recover_plurigenera(const BasicClassSet& set, int n_max = 12,
                                                     const Int& chi = Int(1));

}  // namespace swlat
