#include <swlat/selftest.hpp>

#include <swlat/basic_classes.hpp>
#include <swlat/chambers.hpp>
#include <swlat/errors.hpp>
#include <swlat/lattice.hpp>
#include <swlat/numeric.hpp>
#include <swlat/recovery.hpp>
#include <swlat/surface.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace swlat {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

SurfaceModel general_type(int ksq, int blowups) {
  SurfaceModel m;
  m.kind = SurfaceKind::GeneralTypeMinimal;
  m.ksq = ksq;
  m.blowups = blowups;
  return m;
}

SurfaceModel elliptic_model(int pg, int m1, int m2, int blowups) {
  SurfaceModel m;
  m.kind = SurfaceKind::Elliptic;
  m.pg = pg;
  m.m1 = m1;
  m.m2 = m2;
  m.blowups = blowups;
  return m;
}

// ---- randomized isometries (mirrors the construction used in recovery) ----

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, std::vector<Int>(n, Int(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix compose(const IntMatrix& a, const IntMatrix& b) {
  const int n = static_cast<int>(a.size());
  IntMatrix out(n, std::vector<Int>(n, Int(0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

IntMatrix reflection_matrix(const LatticeSpace& space, const ClassVector& n) {
  const int r = space.rank();
  IntMatrix m(r, std::vector<Int>(r, Int(0)));
  for (int j = 0; j < r; ++j) {
    std::vector<Int> e(r, Int(0));
    e[j] = 1;
    const ClassVector img = space.reflect(ClassVector(std::move(e)), n);
    for (int i = 0; i < r; ++i) m[i][j] = img.coords()[i];
  }
  return m;
}

IntMatrix random_isometry(std::mt19937_64& rng, const LatticeSpace& space) {
  const int r = space.rank();
  std::vector<ClassVector> pool;
  for (int i = 0; i < r; ++i) {
    std::vector<Int> e(r, Int(0));
    e[i] = 1;
    ClassVector c(std::move(e));
    if (space.square(c) == -1) pool.push_back(std::move(c));
  }
  std::uniform_int_distribution<int> coord(-1, 2);
  for (int tries = 0; tries < 200 && pool.size() < 24; ++tries) {
    std::vector<Int> v(r);
    for (auto& x : v) x = Int(coord(rng));
    ClassVector c(std::move(v));
    if (!c.is_zero() && space.square(c) == -1) pool.push_back(std::move(c));
  }
  if (pool.empty()) {
    // Definite-free rank-1 case: the isometry group is just {+1, -1}.
    IntMatrix neg = identity_matrix(r);
    for (int i = 0; i < r; ++i) neg[i][i] = -1;
    return neg;
  }

  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> nrefl(1, 5);
  IntMatrix m = identity_matrix(r);
  const int k = nrefl(rng);
  for (int i = 0; i < k; ++i) m = compose(reflection_matrix(space, pool[pick(rng)]), m);
  if (!space.is_isometry(m)) throw std::logic_error("composed map is not an isometry");
  return m;
}

BasicClassSet transformed(const BasicClassSet& set, const IntMatrix& m) {
  BasicClassSet out = set;
  for (auto& c : out.classes) {
    c.L = out.surface.space.apply(m, c.L);
    c.Xi = out.surface.space.apply(m, c.Xi);
  }
  return out;
}

std::vector<ClassVector> lex_set(std::vector<ClassVector> v) {
  for (auto& x : v) x = x.lex_positive();
  std::sort(v.begin(), v.end());
  return v;
}

// ---- boxed brute-force enumeration oracle --------------------------------
// Independent of the library's search kernel: scans an explicit coordinate
// box whose completeness follows from the positive-definite companion form
// Q(x) = 2(x.a)^2/a^2 - x^2 and the diagonal of its inverse
// (|x_i|^2 <= C * (Q^{-1})_ii whenever Q(x) <= C).

std::vector<std::vector<Rat>> invert_symmetric(std::vector<std::vector<Rat>> m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (m[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) throw std::invalid_argument("singular matrix");
    std::swap(m[p], m[col]);
    std::swap(inv[p], inv[col]);
    const Rat piv = m[col][col];
    for (int j = 0; j < n; ++j) {
      m[col][j] /= piv;
      inv[col][j] /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const Rat f = m[i][col];
      for (int j = 0; j < n; ++j) {
        m[i][j] -= f * m[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<Int> oracle_box(const LatticeSpace& space, const Int& s, const RationalVector& anchor,
                            const Rat& bound) {
  const int n = space.rank();
  const Rat a2 = space.square(anchor);
  if (a2 <= 0) throw std::invalid_argument("anchor must have positive square");
  const Rat c_bound = Rat(2) * bound * bound / a2 - Rat(s);
  if (c_bound < 0 || bound < 0) return std::vector<Int>(n, Int(-1));

  std::vector<Rat> ga(n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ga[i] += Rat(space.gram()[i][j]) * anchor[j];
  std::vector<std::vector<Rat>> q(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = Rat(2) * ga[i] * ga[j] / a2 - Rat(space.gram()[i][j]);
  const auto inv = invert_symmetric(q);

  std::vector<Int> box(n);
  for (int i = 0; i < n; ++i) {
    const Rat cell = c_bound * inv[i][i];
    box[i] = ceil_sqrt(cell);
  }
  return box;
}

Int oracle_box_volume(const LatticeSpace& space, const Int& s, const RationalVector& anchor,
                      const Rat& bound) {
  Int vol = 1;
  for (const Int& b : oracle_box(space, s, anchor, bound)) {
    if (b < 0) return 0;
    vol *= 2 * b + 1;
  }
  return vol;
}

std::vector<ClassVector> oracle_enumerate(const LatticeSpace& space, const Int& s,
                                          const RationalVector& anchor, const Rat& bound,
                                          bool characteristic_only) {
  const int n = space.rank();
  const std::vector<Int> box = oracle_box(space, s, anchor, bound);
  if (!box.empty() && box[0] < 0) return {};

  std::vector<ClassVector> out;
  std::vector<Int> x(n, Int(0));
  for (int i = 0; i < n; ++i) x[i] = -box[i];
  while (true) {
    ClassVector v(x);
    if (space.square(v) == s) {
      Rat p = space.pairing(v, anchor);
      if (p < 0) p = -p;
      if (p <= bound && (!characteristic_only || space.is_characteristic(v))) out.push_back(v);
    }
    int i = 0;
    while (i < n && x[i] == box[i]) {
      x[i] = -box[i];
      ++i;
    }
    if (i == n) break;
    x[i] += 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// A unimodular signature-(1, n-1) gram matrix from a seed form under a random
// integer change of basis, plus a positive-square vector in the new basis.
struct RandomLattice {
  GramMatrix gram;
  ClassVector positive_vector;
};

RandomLattice random_lattice(std::mt19937_64& rng, int rank, int ops) {
  GramMatrix g(rank, std::vector<Int>(rank, Int(0)));
  std::vector<Int> pos(rank, Int(0));
  const bool hyperbolic_block = rank >= 2 && (rng() & 1u);
  if (hyperbolic_block) {
    g[0][1] = g[1][0] = 1;
    for (int i = 2; i < rank; ++i) g[i][i] = -1;
    pos[0] = 1;
    pos[1] = 1;
  } else {
    g[0][0] = 1;
    for (int i = 1; i < rank; ++i) g[i][i] = -1;
    pos[0] = 1;
  }
  std::uniform_int_distribution<int> idx(0, rank - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int t = 0; t < ops; ++t) {
    const int i = idx(rng), j = idx(rng);
    const int k = coef(rng);
    if (i == j || k == 0) continue;
    for (int c = 0; c < rank; ++c) g[i][c] += Int(k) * g[j][c];
    for (int r = 0; r < rank; ++r) g[r][i] += Int(k) * g[r][j];
    pos[j] -= Int(k) * pos[i];
  }
  return RandomLattice{std::move(g), ClassVector(std::move(pos))};
}

// ---- fibered-count divisor oracle -----------------------------------------
// Brute-force scan over full coefficient triples D = a f + b F1 + c F2 with
// a, b, c >= 0 and deg 2D <= deg K; classes come in +/- pairs per distinct
// degree. Independent of the library's semigroup membership test.

size_t fibered_class_count(int m1, int m2) {
  const long long d0 = static_cast<long long>(m1) * m2 - m1 - m2;
  std::set<long long> sigmas;
  for (long long a = 0; 2 * a * m1 * m2 <= d0; ++a)
    for (long long b = 0; 2 * (a * m1 * m2 + b * m2) <= d0; ++b)
      for (long long c = 0; 2 * (a * m1 * m2 + b * m2 + c * m1) <= d0; ++c)
        sigmas.insert(a * m1 * m2 + b * m2 + c * m1);
  return 2 * sigmas.size();
}

// ---- chamber-path helpers --------------------------------------------------

/// Random lattice point of positive square in the forward component of
/// `base`: a uniform box sample shifted along base until it sits two steps
/// inside the positive cone.
ClassVector random_positive_point(const LatticeSpace& space, const ClassVector& base,
                                  std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> coord(-range, range);
  while (true) {
    std::vector<Int> c(space.rank());
    for (int i = 0; i < space.rank(); ++i) c[i] = Int(coord(rng));
    const ClassVector x(std::move(c));
    for (long long m = 0; m < 100000; ++m) {
      const ClassVector shifted = x + base * Int(m);
      if (space.square(shifted) > 0 && space.pairing(shifted, base) > 0) {
        const Int step = Int(m) + 2;
        return x + base * step;
      }
    }
  }
}

/// Move f to `target` by crossing every separating wall one at a time,
/// landing between consecutive crossing parameters; walls tied at one
/// parameter are crossed from the shared near-side point.
ChamberSWFunction walk(const ChamberEngine& eng, ChamberSWFunction f,
                       const RationalVector& target) {
  const RationalVector start = f.chamber.point;
  const RationalVector dir = target - start;
  const std::vector<CrossedWall> crossings = eng.walls_crossed(start, target);
  size_t i = 0;
  while (i < crossings.size()) {
    size_t j = i;
    while (j < crossings.size() && crossings[j].parameter == crossings[i].parameter) ++j;
    RationalVector landing = target;
    if (j < crossings.size()) {
      const Rat tmid = (crossings[i].parameter + crossings[j].parameter) / Rat(2);
      landing = start + dir * tmid;
    }
    const RationalVector before = f.chamber.point;
    for (size_t k = i; k < j; ++k) {
      f.chamber.point = before;
      f = eng.cross_wall(f, crossings[k].wall, landing);
    }
    i = j;
  }
  f.chamber.point = target;
  return f;
}

// ---- the criteria ----------------------------------------------------------

using Outcome = std::pair<bool, std::string>;

Outcome crit_cardinality() {
  long long slowest = 0;
  int cases = 0;
  for (int ksq = 1; ksq <= 9; ++ksq) {
    for (int l = 0; l <= 6; ++l) {
      const auto t0 = Clock::now();
      const BasicClassSet set = enumerate_basic_classes(general_type(ksq, l));
      const long long dt = ms_since(t0);
      slowest = std::max(slowest, dt);
      ++cases;

      std::ostringstream at;
      at << "ksq=" << ksq << " blowups=" << l << ": ";
      const size_t expect = static_cast<size_t>(1) << (l + 1);
      if (set.classes.size() != expect)
        return {false, at.str() + "expected " + std::to_string(expect) + " classes, got " +
                           std::to_string(set.classes.size())};
      std::map<ClassVector, std::set<ClassVector>> by_l;
      for (const SpincBasicClass& c : set.classes) {
        if (c.sw != 1 && c.sw != -1) return {false, at.str() + "value outside {+1,-1}"};
        if (c.index != 0) return {false, at.str() + "nonzero index"};
        by_l[c.L].insert(c.Xi);
      }
      for (const auto& [lc, xis] : by_l)
        if (xis.size() != 1) return {false, at.str() + "several Xi for one L"};
      if (dt >= 1000)
        return {false, at.str() + "took " + std::to_string(dt) + " ms (budget 1000)"};
    }
  }
  std::ostringstream d;
  d << cases << " cases, slowest " << slowest << " ms";
  return {true, d.str()};
}

Outcome crit_fibered_count() {
  int cases = 0;
  for (const auto& [m1, m2] :
       std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
    const size_t d = fibered_class_count(m1, m2);
    for (int l = 0; l <= 4; ++l) {
      const BasicClassSet set = enumerate_basic_classes(elliptic_model(0, m1, m2, l));
      const size_t expect = d << l;
      ++cases;
      if (set.classes.size() != expect) {
        std::ostringstream at;
        at << "(" << m1 << "," << m2 << ") blowups=" << l << ": expected " << expect << ", got "
           << set.classes.size();
        return {false, at.str()};
      }
    }
  }
  return {true, std::to_string(cases) + " cases against the divisor oracle"};
}

Outcome crit_recovery_round_trip() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260816u);
  struct Instance {
    SurfaceModel model;
    bool positive;
  };
  std::vector<Instance> instances;
  for (int ksq = 1; ksq <= 4; ++ksq)
    for (int l = 0; l <= 3; ++l) instances.push_back({general_type(ksq, l), true});
  for (const auto& [m1, m2] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}})
    for (int l = 0; l <= 3; ++l) instances.push_back({elliptic_model(0, m1, m2, l), false});

  for (int trial = 0; trial < 100; ++trial) {
    const auto& inst = instances[trial % instances.size()];
    const SurfaceLattice surface = build(inst.model);
    const BasicClassSet set = enumerate_basic_classes(inst.model);
    const IntMatrix m = random_isometry(rng, surface.space);
    const BasicClassSet moved = transformed(set, m);
    const DifferenceSet moved_diffs = difference_set(moved);

    std::ostringstream at;
    at << "trial " << trial << ": ";
    const RecoveredK0 rec = recover_K0(surface.space, moved_diffs, inst.positive);
    const ClassVector mk0 = surface.space.apply(m, surface.K0);
    if (rec.zero_or_torsion) return {false, at.str() + "canonical pair reported zero"};
    if (rec.plus != mk0 && rec.plus != -mk0)
      return {false, at.str() + "canonical pair is not the isometry image"};
    if (rec.minus != -rec.plus) return {false, at.str() + "pair not opposite"};

    std::vector<ClassVector> expected;
    expected.reserve(surface.exceptionals.size());
    for (const auto& e : surface.exceptionals) expected.push_back(surface.space.apply(m, e));
    const std::vector<ClassVector> got =
        inst.positive ? recover_exceptionals(surface.space, moved_diffs, rec.plus)
                      : recover_exceptionals_fibered(surface.space, moved_diffs);
    if (got != lex_set(expected))
      return {false, at.str() + "exceptional classes are not the isometry images"};
  }
  const long long dt = ms_since(t0);
  if (dt >= 10000)
    return {false, "100 trials took " + std::to_string(dt) + " ms (budget 10000)"};
  return {true, "100 randomized isometries, " + std::to_string(dt) + " ms"};
}

Outcome crit_multiplicity_recovery() {
  std::vector<std::array<int, 3>> cases;
  for (int pg = 1; pg <= 3; ++pg)
    for (int m2 = 2; m2 <= 7; ++m2)
      for (int m1 = 1; m1 < m2; ++m1)
        if (std::gcd(m1, m2) == 1) cases.push_back({pg, m1, m2});
  cases.push_back({1, 1, 1});
  cases.push_back({1, 1, 2});
  cases.push_back({2, 1, 1});

  for (const auto& [pg, m1, m2] : cases) {
    const BasicClassSet set = enumerate_basic_classes(elliptic_model(pg, m1, m2, 0));
    const auto [r1, r2] = recover_multiplicities(set, pg);
    if (r1 != m1 || r2 != m2) {
      std::ostringstream at;
      at << "pg=" << pg << " (" << m1 << "," << m2 << "): recovered (" << r1 << "," << r2 << ")";
      return {false, at.str()};
    }
  }
  return {true, std::to_string(cases.size()) + " multiplicity pairs recovered"};
}

Outcome crit_plurigenera() {
  std::mt19937_64 rng(20260816u);
  for (int ksq = 1; ksq <= 9; ++ksq) {
    for (int l : {0, 2}) {
      const BasicClassSet set = enumerate_basic_classes(general_type(ksq, l));
      const auto table = recover_plurigenera(set, 12);
      std::ostringstream at;
      at << "ksq=" << ksq << " blowups=" << l << ": ";
      if (table.size() != 11) return {false, at.str() + "wrong table length"};
      for (const auto& [n, pn] : table) {
        const Int expect = Int(static_cast<long long>(n) * (n - 1) / 2) * ksq + 1;
        if (pn != expect) {
          at << "P_" << n << " = " << pn.str() << ", expected " << expect.str();
          return {false, at.str()};
        }
      }
      const BasicClassSet moved = transformed(set, random_isometry(rng, set.surface.space));
      if (recover_plurigenera(moved, 12) != table)
        return {false, at.str() + "table changed under an input isometry"};
    }
  }
  return {true, "18 cases, n up to 12, isometry-invariant"};
}

Outcome crit_canonical_ray_off_walls() {
  long long slowest = 0;
  for (int ksq = 1; ksq <= 9; ++ksq) {
    for (int l = 0; l <= 4; ++l) {
      const SurfaceLattice s = build(general_type(ksq, l));
      const Int square = Int(ksq - l);
      const auto t0 = Clock::now();
      const std::vector<ClassVector> hits = s.space.enumerate_with_square(
          square, RationalVector(s.K0), Rat(0), /*characteristic_only=*/true);
      const long long dt = ms_since(t0);
      slowest = std::max(slowest, dt);
      std::ostringstream at;
      at << "ksq=" << ksq << " blowups=" << l << ": ";
      if (!hits.empty())
        return {false, at.str() + "found " + hits.front().str() + " orthogonal to the canonical ray"};
      if (dt >= 60000)
        return {false, at.str() + "took " + std::to_string(dt) + " ms (budget 60000)"};
    }
  }
  return {true, "45 cases empty, slowest " + std::to_string(slowest) + " ms"};
}

Outcome crit_crossing_sign_fixture() {
  const ChamberEngine eng = ChamberEngine::reference_example();
  if (!eng.distinguished_chamber().values.empty())
    return {false, "seed chamber of the fixture is not the zero function"};

  std::vector<Int> mk(17, Int(-1));
  mk[0] = 3;
  const ClassVector minus_k(std::move(mk));  // the wall class
  std::vector<Int> kc(17, Int(1));
  kc[0] = -3;
  const ClassVector k(std::move(kc));

  std::vector<Rat> tc(17, Rat(-3));
  tc[0] = Rat(15);
  const RationalVector target(std::move(tc));

  const std::vector<CrossedWall> crossings = eng.walls_crossed(eng.seed_point(), target);
  if (crossings.size() != 1) return {false, "expected exactly one crossing"};
  if (crossings[0].wall.L != minus_k) return {false, "crossed the wrong wall"};

  const ChamberSWFunction f = eng.sw_for_chamber(target);
  if (f.support_size() != 2) return {false, "support size is not 2 after the crossing"};
  if (f.value(minus_k, ClassVector::zero(17)) != 1)
    return {false, "crossing sign convention broken at the distinguished class"};
  if (f.value(k, k) != -1) return {false, "partner value is not -1"};

  const ChamberSWFunction back = walk(eng, f, eng.seed_point());
  if (!back.values.empty()) return {false, "crossing back does not restore the zero function"};
  return {true, "single crossing reproduces the pinned values exactly"};
}

Outcome crit_path_independence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260816u);
  std::vector<ChamberEngine> engines;
  for (int ksq = 1; ksq <= 2; ++ksq)
    for (int l = 0; l <= 2; ++l) engines.push_back(ChamberEngine::for_surface(build(general_type(ksq, l))));

  int paths = 0;
  for (int t = 0; t < 10; ++t) {
    const ChamberEngine& eng = engines[t % engines.size()];
    const ClassVector base = eng.seed_point().scaled_to_integer();

    std::optional<ChamberSWFunction> direct;
    RationalVector target;
    for (int tries = 0; tries < 200 && !direct; ++tries) {
      target = RationalVector(random_positive_point(eng.space(), base, rng, 6));
      try {
        direct = eng.sw_for_chamber(target);
      } catch (const std::invalid_argument&) {
        // target on a wall: resample
      }
    }
    if (!direct) return {false, "could not sample an off-wall target"};

    for (int p = 0; p < 50; ++p) {
      std::optional<ChamberSWFunction> two_leg;
      for (int tries = 0; tries < 200 && !two_leg; ++tries) {
        const RationalVector mid(random_positive_point(eng.space(), base, rng, 6));
        try {
          two_leg = walk(eng, eng.sw_for_chamber(mid), target);
        } catch (const std::invalid_argument&) {
          // mid on a wall, or the second leg ends on one: resample
        }
      }
      if (!two_leg) return {false, "could not sample an off-wall midpoint"};
      ++paths;

      std::vector<ClassVector> walls = two_leg->chamber.separating_walls;
      std::sort(walls.begin(), walls.end());
      if (two_leg->values != direct->values || walls != direct->chamber.separating_walls ||
          two_leg->chamber.component_sign != direct->chamber.component_sign) {
        std::ostringstream at;
        at << "target " << t << ", path " << paths << ": two-leg result differs";
        return {false, at.str()};
      }
    }
  }
  const long long dt = ms_since(t0);
  if (dt >= 120000)
    return {false, std::to_string(paths) + " paths took " + std::to_string(dt) + " ms (budget 120000)"};
  return {true, std::to_string(paths) + " two-leg paths to 10 targets, " + std::to_string(dt) + " ms"};
}

Outcome crit_reflection_equivariance() {
  std::mt19937_64 rng(20260816u);
  std::vector<ChamberEngine> engines;
  for (int ksq = 1; ksq <= 3; ++ksq)
    for (int l = 1; l <= 3; ++l) engines.push_back(ChamberEngine::for_surface(build(general_type(ksq, l))));

  int trials = 0;
  for (int t = 0; t < 50; ++t) {
    const ChamberEngine& eng = engines[t % engines.size()];
    std::uniform_int_distribution<size_t> pick(0, eng.exceptionals().size() - 1);
    ClassVector n = eng.exceptionals()[pick(rng)];
    if (rng() & 1u) n = -n;
    if (!eng.reflection_equivariance_check(n, 1, 777000u + static_cast<unsigned>(t))) {
      std::ostringstream at;
      at << "trial " << t << ": transported values differ at the reflected point";
      return {false, at.str()};
    }
    ++trials;
  }
  return {true, std::to_string(trials) + " (point, class) trials"};
}

Outcome crit_distinguished_uniqueness() {
  const auto t0 = Clock::now();
  for (int l : {1, 2}) {
    const int rank = 1 + l;
    GramMatrix gram(rank, std::vector<Int>(rank, Int(0)));
    gram[0][0] = 1;
    for (int i = 1; i < rank; ++i) gram[i][i] = -1;
    std::vector<Int> k0c(rank, Int(0));
    k0c[0] = 1;
    std::vector<ClassVector> es;
    for (int i = 1; i < rank; ++i) {
      std::vector<Int> e(rank, Int(0));
      e[i] = 1;
      es.emplace_back(std::move(e));
    }
    const SurfaceLattice s =
        build_override(general_type(1, l), gram, ClassVector(std::move(k0c)), es);
    const ChamberEngine eng = ChamberEngine::for_surface(s);
    const std::vector<SearchedChamber> found = eng.search_distinguished(5, 4);

    std::ostringstream at;
    at << "blowups=" << l << ": ";
    int passing = 0;
    int component_sum = 0;
    for (const SearchedChamber& c : found) {
      if (!c.passes) continue;
      ++passing;
      component_sum += c.chamber.component_sign;
      if (!c.chamber.separating_walls.empty())
        return {false, at.str() + "a passing chamber is separated from the seed"};
    }
    if (passing != 2) {
      at << "expected the +/- seed pair, found " << passing << " passing chambers";
      return {false, at.str()};
    }
    if (component_sum != 0) return {false, at.str() + "passing pair is not opposite"};
  }
  const long long dt = ms_since(t0);
  if (dt >= 600000)
    return {false, "searches took " + std::to_string(dt) + " ms (budget 600000)"};
  return {true, "grid searches isolate the seed pair, " + std::to_string(dt) + " ms"};
}

Outcome crit_summand_rigidity() {
  int impostors = 0;
  int genuine = 0;
  for (int ksq = 1; ksq <= 3; ++ksq) {
    for (int l = 0; l <= 3; ++l) {
      const SurfaceLattice s = build(general_type(ksq, l));
      const BasicClassSet set = enumerate_basic_classes(general_type(ksq, l));
      const DifferenceSet diffs = difference_set(set);
      for (const ClassVector& d : diffs.elements) {
        if (s.space.square(d) != -1) continue;
        std::optional<int> expected;
        for (size_t j = 0; j < s.exceptionals.size(); ++j)
          if (d == s.exceptionals[j] || d == -s.exceptionals[j]) expected = static_cast<int>(j);

        const SummandVerdict v = classify_summand_class(set, s.K0, s.exceptionals, d);
        std::ostringstream at;
        at << "ksq=" << ksq << " blowups=" << l << " class " << d.str() << ": ";
        if (expected) {
          ++genuine;
          if (!v.is_exceptional() || *v.exceptional_index != *expected)
            return {false, at.str() + "genuine exceptional class not confirmed"};
        } else {
          ++impostors;
          if (v.is_exceptional()) return {false, at.str() + "impostor confirmed as exceptional"};
          if (!v.witness) return {false, at.str() + "no contradiction witness produced"};
          if (diffs.contains(*v.witness))
            return {false, at.str() + "witness is present in the difference set"};
        }
      }
    }
  }
  if (impostors == 0) return {false, "vacuous: no impostor candidates arose"};
  std::ostringstream d;
  d << impostors << " impostors refuted, " << genuine << " genuine classes confirmed";
  return {true, d.str()};
}

Outcome crit_enumeration_oracle() {
  std::mt19937_64 rng(20260816u);
  std::uniform_int_distribution<int> rank_dist(1, 4);
  std::uniform_int_distribution<int> s_dist(-9, 9);
  std::uniform_int_distribution<int> bound_dist(0, 6);

  int compared = 0;
  int nontrivial = 0;
  while (compared < 200) {
    const int rank = rank_dist(rng);
    const RandomLattice rl = random_lattice(rng, rank, 4);
    const LatticeSpace space = LatticeSpace::checked(rl.gram);
    const Int s = Int(s_dist(rng));
    const Rat bound = Rat(bound_dist(rng));
    const bool char_only = rng() & 1u;
    const RationalVector anchor(rl.positive_vector);

    if (oracle_box_volume(space, s, anchor, bound) > 2'000'000) continue;  // keep the scan tractable
    const auto got = space.enumerate_with_square(s, anchor, bound, char_only);
    const auto want = oracle_enumerate(space, s, anchor, bound, char_only);
    ++compared;
    if (got != want) {
      std::ostringstream at;
      at << "instance " << compared << " (rank " << rank << ", square " << s.str() << "): kernel and box scan disagree";
      return {false, at.str()};
    }
    if (!got.empty()) ++nontrivial;
  }
  if (nontrivial <= 30) return {false, "comparison was mostly vacuous"};
  std::ostringstream d;
  d << "200 instances, " << nontrivial << " with nonempty results";
  return {true, d.str()};
}

}  // namespace

std::vector<CriterionResult> run_all_criteria() {
  struct Entry {
    const char* name;
    Outcome (*fn)();
  };
  const std::vector<Entry> entries = {
      {"cardinality", crit_cardinality},
      {"fibered-count", crit_fibered_count},
      {"recovery-round-trip", crit_recovery_round_trip},
      {"multiplicity-recovery", crit_multiplicity_recovery},
      {"plurigenera", crit_plurigenera},
      {"canonical-ray-off-walls", crit_canonical_ray_off_walls},
      {"crossing-sign-fixture", crit_crossing_sign_fixture},
      {"path-independence", crit_path_independence},
      {"reflection-equivariance", crit_reflection_equivariance},
      {"distinguished-uniqueness", crit_distinguished_uniqueness},
      {"summand-rigidity", crit_summand_rigidity},
      {"enumeration-oracle", crit_enumeration_oracle},
  };

  std::vector<CriterionResult> results;
  results.reserve(entries.size());
  for (const Entry& e : entries) {
    CriterionResult r;
    r.name = e.name;
    const auto t0 = Clock::now();
    try {
      const Outcome o = e.fn();
      r.pass = o.first;
      r.details = o.second;
    } catch (const std::exception& ex) {
      r.pass = false;
      r.details = std::string("exception: ") + ex.what();
    }
    r.ms = ms_since(t0);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace swlat
