#include <swlat/basic_classes.hpp>

#include <algorithm>
#include <map>

namespace swlat {

namespace {

bool class_key_less(const SpincBasicClass& a, const SpincBasicClass& b) {
  if (a.L != b.L) return a.L < b.L;
  return a.Xi < b.Xi;
}

Int index_of(const SurfaceLattice& surface, const ClassVector& L) {
  Int num = surface.space.square(L) - surface.K_tilde_square();
  if (num % 4 != 0) throw std::logic_error("class index is not integral");
  return num / 4;
}

void finalize(BasicClassSet& set) {
  std::sort(set.classes.begin(), set.classes.end(), class_key_less);
  for (size_t i = 1; i < set.classes.size(); ++i)
    if (set.classes[i] == set.classes[i - 1] ||
        (set.classes[i].L == set.classes[i - 1].L && set.classes[i].Xi == set.classes[i - 1].Xi))
      throw std::logic_error("duplicate (L, Xi) pair in basic-class set");
}

}  // namespace

bool operator==(const SpincBasicClass& a, const SpincBasicClass& b) {
  return a.L == b.L && a.Xi == b.Xi && a.sw == b.sw && a.multiplicity == b.multiplicity &&
         a.index == b.index;
}

bool BasicClassSet::contains(const ClassVector& L, const ClassVector& Xi) const {
  for (const auto& c : classes)
    if (c.L == L && c.Xi == Xi) return true;
  return false;
}

std::vector<ClassVector> BasicClassSet::l_values() const {
  std::vector<ClassVector> out;
  for (const auto& c : classes) out.push_back(c.L);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BasicClassSet minimal_general_type(const SurfaceLattice& surface) {
  if (!surface.model.is_general_type())
    throw std::invalid_argument("minimal_general_type: wrong surface kind");
  if (surface.model.blowups != 0)
    throw std::invalid_argument("minimal_general_type: expects the minimal model (no blowups)");
  Int sw_plus = ((surface.model.q + surface.model.pg) % 2 == 0) ? 1 : -1;
  BasicClassSet set{{}, surface};
  set.classes.push_back({-surface.K0, ClassVector::zero(surface.space.rank()), 1, 1, 0});
  set.classes.push_back({surface.K0, surface.K0, sw_plus, 1, 0});
  for (auto& c : set.classes) c.index = index_of(surface, c.L);
  finalize(set);
  return set;
}

BasicClassSet elliptic_pg_positive(const SurfaceLattice& surface) {
  const SurfaceModel& m = surface.model;
  if (!m.is_elliptic() || m.pg < 1)
    throw std::invalid_argument("elliptic_pg_positive: elliptic surface with pg >= 1 required");
  if (m.blowups != 0)
    throw std::invalid_argument("elliptic_pg_positive: expects the minimal model (no blowups)");

  Int involution_sign = (m.pg % 2 == 1) ? 1 : -1;  // (-1)^(1+pg)
  std::map<Int, Int> multiplicity_by_sigma;        // merge equal classes defensively
  for (int a = 0; a <= m.pg - 1; ++a)
    for (int b = 0; b <= m.m1 - 1; ++b)
      for (int c = 0; c <= m.m2 - 1; ++c) {
        Int sigma = Int(a) * m.m1 * m.m2 + Int(b) * m.m2 + Int(c) * m.m1;
        multiplicity_by_sigma[sigma] += binomial(m.pg - 1, a);
      }

  Int d0 = m.canonical_fiber_degree();
  BasicClassSet set{{}, surface};
  for (const auto& [sigma, mult] : multiplicity_by_sigma) {
    Int deg = d0 - 2 * sigma;  // fiber-unit degree of L
    ClassVector L = surface.t * deg;
    ClassVector Xi = surface.t * (d0 - sigma);  // K0 - D
    Int sw = (deg >= 0) ? Int(1) : involution_sign;
    set.classes.push_back({std::move(L), std::move(Xi), sw, mult, 0});
  }
  for (auto& c : set.classes) c.index = index_of(surface, c.L);
  finalize(set);
  return set;
}

BasicClassSet dolgachev(const SurfaceLattice& surface) {
  const SurfaceModel& m = surface.model;
  if (!m.is_dolgachev())
    throw std::invalid_argument("dolgachev: minimal elliptic surface with pg = 0 required");
  if (m.blowups != 0) throw std::invalid_argument("dolgachev: expects the minimal model (no blowups)");

  Int d0 = m.canonical_fiber_degree();
  BasicClassSet set{{}, surface};
  for (Int sigma = 0; 2 * sigma <= d0; ++sigma) {
    if (!effective_fiber_class(m.m1, m.m2, sigma)) continue;
    Int deg = d0 - 2 * sigma;
    // deg > 0 always: the canonical degree of a Dolgachev surface is odd.
    set.classes.push_back({surface.t * deg, surface.t * (d0 - sigma), 1, 1, 0});
    set.classes.push_back({surface.t * (-deg), surface.t * sigma, -1, 1, 0});
  }
  for (auto& c : set.classes) c.index = index_of(surface, c.L);
  finalize(set);
  return set;
}

BasicClassSet blowup(const BasicClassSet& set, const SurfaceLattice& blown_up) {
  int old_rank = set.surface.space.rank();
  int new_rank = blown_up.space.rank();
  if (new_rank < old_rank) throw std::invalid_argument("blowup: target lattice smaller than source");
  for (int i = 0; i < old_rank; ++i)
    for (int j = 0; j < old_rank; ++j)
      if (blown_up.space.gram()[i][j] != set.surface.space.gram()[i][j])
        throw std::invalid_argument("blowup: target lattice does not extend the source lattice");

  // The new exceptional classes are those supported outside the source block.
  std::vector<ClassVector> new_es;
  for (const auto& e : blown_up.exceptionals) {
    bool outside = false;
    for (int i = old_rank; i < new_rank; ++i)
      if (e[i] != 0) outside = true;
    if (!outside) continue;
    for (int i = 0; i < old_rank; ++i)
      if (e[i] != 0)
        throw std::invalid_argument("blowup: new exceptional classes must be orthogonal to the source block");
    new_es.push_back(e);
  }
  if (static_cast<int>(new_es.size()) != new_rank - old_rank)
    throw std::invalid_argument("blowup: exceptional classes missing from the target lattice");

  auto pad = [&](const ClassVector& v) {
    std::vector<Int> c(v.coords());
    c.resize(new_rank, Int(0));
    return ClassVector(std::move(c));
  };

  int k = static_cast<int>(new_es.size());
  BasicClassSet out{{}, blown_up};
  for (const auto& cls : set.classes) {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      ClassVector L = pad(cls.L);
      ClassVector Xi = pad(cls.Xi);
      Int sign_product = 1;
      for (int i = 0; i < k; ++i) {
        if (mask & (1u << i)) {
          L = L + new_es[i];
          Xi = Xi + new_es[i];
        } else {
          L = L - new_es[i];
          sign_product *= -1;
        }
      }
      out.classes.push_back({std::move(L), std::move(Xi), cls.sw * sign_product, cls.multiplicity, 0});
    }
  }
  for (auto& c : out.classes) c.index = index_of(blown_up, c.L);
  finalize(out);
  return out;
}

BasicClassSet enumerate_basic_classes(const SurfaceModel& model) {
  model.validate();
  SurfaceModel minimal = model;
  minimal.blowups = 0;
  SurfaceLattice minimal_lattice = build(minimal);
  BasicClassSet set = model.is_general_type() ? minimal_general_type(minimal_lattice)
                      : model.pg >= 1         ? elliptic_pg_positive(minimal_lattice)
                                              : dolgachev(minimal_lattice);
  if (model.blowups == 0) return set;
  return blowup(set, build(model));
}

namespace {

// Effectivity of (K0 +- L)/2 on a minimal elliptic surface: decidable for
// fiber-direction classes; anything else cannot be certified effective.
bool effective_on_elliptic(const SurfaceLattice& surface, const ClassVector& d) {
  for (int i = 1; i < d.rank(); ++i)
    if (d[i] != 0) return false;
  return effective_fiber_class(surface.model.m1, surface.model.m2, d[0]);
}

}  // namespace

bool admits_irreducible_solutions(const SurfaceLattice& surface, const ClassVector& L,
                                  const ClassVector& omega) {
  if (!surface.elliptic)
    throw std::invalid_argument("admits_irreducible_solutions: elliptic surface models only");
  if (surface.model.blowups != 0)
    throw std::invalid_argument("admits_irreducible_solutions: minimal model required");
  ClassVector sum = surface.K0 + L;
  ClassVector diff = surface.K0 - L;
  for (int i = 0; i < sum.rank(); ++i)
    if (sum[i] % 2 != 0 || diff[i] % 2 != 0)
      throw std::invalid_argument("(K0 +- L)/2 is not an integral class");
  if (surface.space.square(L) < surface.space.square(surface.K0)) return false;
  Int pairing = surface.space.pairing(omega, L);
  if (pairing == 0) return L.is_zero() && surface.K0.is_zero();
  if (pairing < 0) return effective_on_elliptic(surface, sum.divided_by(2));
  return effective_on_elliptic(surface, diff.divided_by(2));
}

bool check_simple_type(const BasicClassSet& set) {
  for (const auto& c : set.classes)
    if (c.index != 0) return false;
  return true;
}

}  // namespace swlat
