#include <swlat/recovery.hpp>

#include <swlat/errors.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace swlat {

bool DifferenceSet::contains(const ClassVector& v) const {
  return std::binary_search(elements.begin(), elements.end(), v);
}

DifferenceSet difference_set(const BasicClassSet& set) {
  if (set.classes.size() < 2)
    throw std::invalid_argument("difference_set: at least two basic classes required");
  DifferenceSet out;
  for (const auto& a : set.classes)
    for (const auto& b : set.classes) {
      if (&a == &b) continue;
      ClassVector d = a.Xi - b.Xi;
      if (!d.is_zero()) out.elements.push_back(std::move(d));
    }
  std::sort(out.elements.begin(), out.elements.end());
  out.elements.erase(std::unique(out.elements.begin(), out.elements.end()), out.elements.end());
  return out;
}

namespace {

Int content_of(const ClassVector& v) {
  Int g = 0;
  for (const auto& c : v.coords()) g = boost::multiprecision::gcd(g, c);
  return g;  // nonnegative; zero only for the zero vector
}

// The exact integer m with z == kappa * m, for primitive kappa != 0.
// Throws if z is not an integer multiple of kappa.
Int multiple_of(const ClassVector& z, const ClassVector& kappa) {
  int idx = -1;
  for (int i = 0; i < kappa.rank(); ++i)
    if (kappa.coords()[i] != 0) {
      idx = i;
      break;
    }
  Int m = z.coords()[idx] / kappa.coords()[idx];
  if (z != kappa * m)
    throw AmbiguousRecovery("recover_K0: square-zero differences are not proportional");
  return m;
}

}  // namespace

RecoveredK0 recover_K0(const LatticeSpace& space, const DifferenceSet& diffs, bool ksq_positive) {
  if (diffs.elements.empty()) throw std::invalid_argument("recover_K0: empty difference set");

  if (ksq_positive) {
    Int best = space.square(diffs.elements.front());
    for (const auto& d : diffs.elements) best = std::max(best, space.square(d));
    if (best <= 0)
      throw AmbiguousRecovery("recover_K0: no positive-square difference class");
    std::vector<ClassVector> top;
    for (const auto& d : diffs.elements)
      if (space.square(d) == best) top.push_back(d);
    if (top.size() != 2 || top[0] != -top[1])
      throw AmbiguousRecovery("recover_K0: maximal square not achieved by a unique +/- pair");
    ClassVector plus = top[0].lex_positive();
    return RecoveredK0{plus, -plus, false};
  }

  std::vector<ClassVector> zs;
  for (const auto& d : diffs.elements)
    if (space.square(d) == 0) zs.push_back(d);
  int rank = diffs.elements.front().rank();
  if (zs.empty()) return RecoveredK0{ClassVector::zero(rank), ClassVector::zero(rank), true};

  ClassVector kappa = zs.front().divided_by(content_of(zs.front())).lex_positive();
  Int best_mult = 0;
  for (const auto& z : zs) {
    Int m = multiple_of(z, kappa);
    if (m < 0) m = -m;
    best_mult = std::max(best_mult, m);
  }
  // Proportionality makes the maximum automatically a single +/- pair.
  ClassVector plus = kappa * best_mult;
  return RecoveredK0{plus, -plus, false};
}

std::vector<ClassVector> recover_exceptionals(const LatticeSpace& space, const DifferenceSet& diffs,
                                              const ClassVector& K0) {
  std::vector<ClassVector> out;
  for (const auto& d : diffs.elements)
    if (space.square(d) == -1 && space.pairing(K0, d) == 0) out.push_back(d.lex_positive());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ClassVector> recover_exceptionals_fibered(const LatticeSpace& space,
                                                      const DifferenceSet& diffs) {
  std::vector<ClassVector> out;
  for (const auto& e : diffs.elements) {
    if (space.square(e) != -1) continue;
    bool closed = true;
    for (const auto& d : diffs.elements)
      if (!diffs.contains(space.reflect(d, e))) {
        closed = false;
        break;
      }
    if (closed) out.push_back(e.lex_positive());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SummandVerdict classify_summand_class(const BasicClassSet& set, const ClassVector& K0,
                                      const std::vector<ClassVector>& Es, const ClassVector& n) {
  const LatticeSpace& space = set.surface.space;
  if (space.square(n) != -1)
    throw std::invalid_argument("classify_summand_class: square -1 class required");
  DifferenceSet diffs = difference_set(set);
  if (!diffs.contains(n))
    throw std::invalid_argument("classify_summand_class: class is not a difference of basic classes");
  for (size_t j = 0; j < Es.size(); ++j)
    if (n == Es[j] || n == -Es[j]) {
      SummandVerdict v;
      v.exceptional_index = static_cast<int>(j);
      return v;
    }
  ClassVector witness = space.reflect(K0, n);
  if (diffs.contains(witness))
    throw AmbiguousRecovery("classify_summand_class: reflected canonical class is a difference class");
  SummandVerdict v;
  v.witness = std::move(witness);
  return v;
}

SummandVerdict classify_summand_class_fibered(const BasicClassSet& set, const ClassVector&,
                                              const std::vector<ClassVector>& Es,
                                              const ClassVector& n) {
  const SurfaceLattice& s = set.surface;
  if (!s.elliptic)
    throw std::invalid_argument("classify_summand_class_fibered: fibered surface data required");
  if (s.space.square(n) != -1)
    throw std::invalid_argument("classify_summand_class_fibered: square -1 class required");
  Int fiber_coeff = n.coords()[0];
  ClassVector residual = n - s.t * fiber_coeff;
  int j = -1;
  for (size_t k = 0; k < Es.size(); ++k)
    if (residual == Es[k] || residual == -Es[k]) {
      j = static_cast<int>(k);
      break;
    }
  if (j < 0)
    throw std::invalid_argument(
        "classify_summand_class_fibered: class is not of the form T + e*E_j with fibered T");
  if (fiber_coeff == 0) {
    SummandVerdict v;
    v.exceptional_index = j;
    return v;
  }
  std::set<Int> degrees;
  for (const auto& c : set.classes) degrees.insert(c.L.coords()[0]);
  for (auto it = degrees.rbegin(); it != degrees.rend(); ++it) {
    Int shifted = *it - 2 * fiber_coeff;
    if (degrees.count(shifted) == 0) {
      SummandVerdict v;
      v.witness = s.t * shifted;
      return v;
    }
  }
  throw std::logic_error("finite degree set cannot be closed under a nonzero shift");
}

bool summand_sets_compatible(const LatticeSpace& space, const std::vector<ClassVector>& set1,
                             const std::vector<ClassVector>& set2) {
  for (const auto& np : set2) {
    bool matched = false;
    for (const auto& n : set1)
      if (np == n || np == -n) {
        matched = true;
        break;
      }
    if (matched) continue;
    for (const auto& n : set1)
      if (space.pairing(np, n) != 0) return false;
  }
  return true;
}

std::pair<int, int> recover_multiplicities(const BasicClassSet& set, int pg) {
  if (pg < 1) throw std::invalid_argument("recover_multiplicities: pg >= 1 required");
  std::map<Int, Int> mult_by_degree;
  for (const auto& c : set.classes) {
    const auto& coords = c.L.coords();
    for (size_t i = 1; i < coords.size(); ++i)
      if (coords[i] != 0)
        throw std::invalid_argument(
            "recover_multiplicities: minimal elliptic data required (fiber-direction classes only)");
    mult_by_degree[coords[0]] += c.multiplicity;
  }

  std::vector<Int> degrees;
  for (const auto& entry : mult_by_degree) degrees.push_back(entry.first);
  std::sort(degrees.rbegin(), degrees.rend());  // descending
  Int r_max = degrees.front();
  if (r_max < 0) throw AmbiguousRecovery("recover_multiplicities: degree data is not symmetric");

  int m1 = 0, m2 = 0;
  if (r_max == 0) {
    if (degrees.size() != 1 || pg != 1)
      throw AmbiguousRecovery("recover_multiplicities: trivial canonical degree needs pg = 1");
    m1 = m2 = 1;
  } else {
    Int r_next = degrees.size() > 1 ? degrees[1] : Int(-1);
    if (r_next < 0) {
      // Degree set {+r, -r}: the short list of low-pg special cases.
      if (pg == 1) {
        m1 = 1;
        m2 = 2;
      } else if (pg == 2) {
        m1 = m2 = 1;
      } else {
        throw AmbiguousRecovery("recover_multiplicities: two-degree data matches no pair at this pg");
      }
    } else {
      Int gap = r_max - r_next;
      if (gap % 2 != 0)
        throw AmbiguousRecovery("recover_multiplicities: odd gap between leading degrees");
      Int m1_big = gap / 2;
      Int denom = Int(pg + 1) * m1_big - 1;
      Int num = r_max - Int(pg) * m1_big + 1;
      if (denom <= 0 || num % denom != 0)
        throw AmbiguousRecovery("recover_multiplicities: leading degrees solve no multiplicity pair");
      Int m2_big = 1 + num / denom;
      if (m1_big < 1 || m2_big < m1_big)
        throw AmbiguousRecovery("recover_multiplicities: recovered pair is not ordered");
      m1 = static_cast<int>(m1_big);
      m2 = static_cast<int>(m2_big);
    }
  }

  // Confirm by re-enumeration: the degree -> multiplicity table must match.
  SurfaceModel model;
  model.kind = SurfaceKind::Elliptic;
  model.pg = pg;
  model.m1 = m1;
  model.m2 = m2;
  BasicClassSet ref = [&] {
    try {
      return enumerate_basic_classes(model);
    } catch (const UnsupportedModel&) {
      throw AmbiguousRecovery("recover_multiplicities: recovered pair is not a supported model");
    }
  }();
  std::map<Int, Int> ref_table;
  for (const auto& c : ref.classes) ref_table[c.L.coords()[0]] += c.multiplicity;
  if (ref_table != mult_by_degree)
    throw AmbiguousRecovery("recover_multiplicities: degree table matches no multiplicity pair");
  return {m1, m2};
}

std::vector<std::pair<int, Int>> recover_plurigenera(const BasicClassSet& set, int n_max,
                                                     const Int& chi) {
  if (n_max < 2) throw std::invalid_argument("recover_plurigenera: n_max >= 2 required");
  const LatticeSpace& space = set.surface.space;
  DifferenceSet diffs = difference_set(set);
  Int best = space.square(diffs.elements.front());
  for (const auto& d : diffs.elements) best = std::max(best, space.square(d));
  if (best <= 0)
    throw std::invalid_argument(
        "recover_plurigenera: canonical square is not positive; use multiplicity recovery");
  RecoveredK0 rec = recover_K0(space, diffs, true);
  Int ksq = space.square(rec.plus);
  std::vector<std::pair<int, Int>> table;
  for (int n = 2; n <= n_max; ++n)
    table.emplace_back(n, Int(n) * (n - 1) / 2 * ksq + chi);
  return table;
}

}  // namespace swlat
