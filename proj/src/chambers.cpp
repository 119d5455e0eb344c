#include <swlat/chambers.hpp>

#include <swlat/errors.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace swlat {

namespace {

int sgn(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
int sgn(const Int& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Enumeration-radius cap for one leaf call of the segment wall search; larger
// segments are bisected first.  Small leaves keep the Fincke-Pohst tree narrow
// in high rank, at the price of more (cheap) leaf calls.
constexpr long kLeafRadius = 8;

std::vector<ClassVector> xor_wall_sets(const std::vector<ClassVector>& a,
                                       const std::vector<ClassVector>& b) {
  std::map<ClassVector, int> parity;
  for (const ClassVector& w : a) parity[w] ^= 1;
  for (const ClassVector& w : b) parity[w] ^= 1;
  std::vector<ClassVector> out;
  for (const auto& [w, p] : parity)
    if (p) out.push_back(w);
  return out;
}

Int content_of(const ClassVector& v) {
  Int g = 0;
  for (const Int& c : v.coords()) {
    const Int a = c < 0 ? Int(-c) : c;
    g = boost::multiprecision::gcd(g, a);
  }
  return g;
}

bool is_lex_positive(const ClassVector& v) {
  for (const Int& c : v.coords()) {
    if (c > 0) return true;
    if (c < 0) return false;
  }
  return false;  // zero vector: neither
}

/// Random lattice point of positive square in the component of `base`
/// (base.base > 0 required): a uniform box sample shifted along base until it
/// sits two steps inside the positive cone. Termination is guaranteed because
/// the square grows quadratically in the shift.
ClassVector biased_positive_sample(const LatticeSpace& space, const ClassVector& base,
                                   std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> coord(-range, range);
  std::vector<Int> c(space.rank());
  for (int i = 0; i < space.rank(); ++i) c[i] = Int(coord(rng));
  const ClassVector x(std::move(c));
  Int m(0);
  while (true) {
    const ClassVector y = x + base * m;
    if (space.square(y) > 0 && space.pairing(y, base) > 0) {
      const Int m2 = m + 2;
      return x + base * m2;
    }
    ++m;
  }
}

}  // namespace

ChamberEngine::ChamberEngine(LatticeSpace space, ClassVector k_tilde, RationalVector seed_point,
                             std::map<ClassKey, Int> seed_values,
                             std::vector<ClassVector> exceptionals, ClassVector k0, Int c0_square,
                             int ell, TorsionTag torsion)
    : space_(std::move(space)),
      k_tilde_(std::move(k_tilde)),
      wall_square_(0),
      seed_point_(std::move(seed_point)),
      seed_values_(std::move(seed_values)),
      exceptionals_(std::move(exceptionals)),
      k0_(std::move(k0)),
      c0_square_(std::move(c0_square)),
      ell_(ell),
      torsion_(torsion) {
  wall_square_ = space_.square(k_tilde_);
}

ChamberEngine ChamberEngine::for_surface(const SurfaceLattice& surface) {
  if (!surface.model.is_general_type())
    throw UnsupportedModel(
        "chamber engines are available for blown-up general-type surfaces and the reference "
        "example only");
  const int l = static_cast<int>(surface.exceptionals.size());
  if (l > 20) throw std::invalid_argument("too many exceptional classes for a seeded chamber");

  const ClassVector k_tilde = surface.K_tilde();
  std::map<ClassKey, Int> seed;
  for (int mask = 0; mask < (1 << l); ++mask) {
    for (int sig : {+1, -1}) {
      ClassVector L = surface.K0 * Int(sig);
      for (int i = 0; i < l; ++i)
        L = L + ((mask >> i) & 1 ? surface.exceptionals[i] : -surface.exceptionals[i]);
      const ClassVector xi = (L + k_tilde).divided_by(Int(2));
      seed[{L.coords(), xi.coords()}] = (sig < 0) ? Int(1) : Int(-1);
    }
  }
  return ChamberEngine(surface.space, k_tilde, RationalVector(surface.K0), std::move(seed),
                       surface.exceptionals, surface.K0, surface.space.square(surface.K0), l,
                       surface.model.torsion2);
}

ChamberEngine ChamberEngine::reference_example() {
  const int n = 17;
  GramMatrix gram(n, std::vector<Int>(n, Int(0)));
  gram[0][0] = 1;
  for (int i = 1; i < n; ++i) gram[i][i] = -1;
  LatticeSpace space = LatticeSpace::checked(std::move(gram));

  std::vector<Int> kc(n, Int(1));
  kc[0] = -3;
  ClassVector k(std::move(kc));

  std::vector<Rat> wc(n, Rat(-1));
  wc[0] = 7;
  RationalVector omega0(std::move(wc));

  return ChamberEngine(std::move(space), k, std::move(omega0), {}, {}, k, Int(9), 16,
                       TorsionTag::None);
}

ClassVector ChamberEngine::natural_xi(const ClassVector& L) const {
  return (L + k_tilde_).divided_by(Int(2));
}

std::optional<Wall> ChamberEngine::lies_on_wall(const RationalVector& v) const {
  if (space_.square(v) <= 0)
    throw std::invalid_argument("wall membership is defined for positive-square points only");
  if (wall_square_ >= 0) return std::nullopt;  // no characteristic class of square >= 0
                                               // can be orthogonal to a positive point
  const std::vector<ClassVector> hits =
      space_.enumerate_with_square(wall_square_, v, Rat(0), true);
  for (const ClassVector& L : hits)
    if (!L.is_zero()) return Wall{L.lex_positive()};
  return std::nullopt;
}

std::optional<Wall> ChamberEngine::lies_on_wall(const ClassVector& v) const {
  return lies_on_wall(RationalVector(v));
}

void ChamberEngine::collect_wall_candidates(const RationalVector& x0, const RationalVector& x1,
                                            int depth, std::vector<ClassVector>& out) const {
  const RationalVector w = x1 - x0;
  const Rat a = space_.square(w);
  const Rat b = Rat(2) * space_.pairing(w, x0);
  const Rat c = space_.square(x0);

  // Squared pairing of the segment direction against any point of the
  // segment's affine line is controlled by N = (w.x0)^2 - w^2 x0^2, which is
  // the same at every point of the line; N >= 0 because some segment point
  // has positive square.
  const Rat N = b * b / Rat(4) - a * c;
  if (N < 0) throw std::logic_error("segment discriminant negative on a positive-square segment");

  // Minimum of x_t^2 over t in [0,1]: endpoints, plus the interior vertex of
  // the quadratic when it opens upward.
  const Rat end1 = a + b + c;
  Rat m = std::min(c, end1);
  if (a > 0) {
    const Rat tv = -b / (Rat(2) * a);
    if (tv > 0 && tv < 1) {
      const Rat vertex = (Rat(4) * a * c - b * b) / (Rat(4) * a);
      m = std::min(m, vertex);
    }
  }
  if (m <= 0)
    throw std::invalid_argument("segment leaves the positive cone between its endpoints");

  // For a wall class L (L^2 = s < 0) orthogonal to some segment point v:
  // (L.x0)^2 <= (L.w)^2 <= (-s) * N / v^2 <= (-s) * N / m.
  const Int minus_s = -wall_square_;
  const Rat val = Rat(minus_s) * N / m;
  const Int u = ceil_sqrt(val);

  if (depth < 16) {
    // Estimated enumeration radius of the companion positive form; bisect the
    // segment when it is large, which shrinks N quadratically.
    const Int usq = u * u;
    const Rat est = Rat(2) * Rat(usq) / c - Rat(wall_square_);
    if (est > kLeafRadius) {
      const RationalVector mid = (x0 + x1) * Rat(1, 2);
      collect_wall_candidates(x0, mid, depth + 1, out);
      collect_wall_candidates(mid, x1, depth + 1, out);
      return;
    }
  }

  const std::vector<ClassVector> found =
      space_.enumerate_with_square(wall_square_, x0, Rat(u), true);
  for (const ClassVector& L : found)
    if (!L.is_zero()) out.push_back(L.lex_positive());
}

std::vector<CrossedWall> ChamberEngine::walls_crossed(const RationalVector& x0,
                                                      const RationalVector& x1) const {
  if (space_.square(x0) <= 0 || space_.square(x1) <= 0)
    throw std::invalid_argument("chamber points must have positive square");
  if (space_.pairing(x0, x1) <= 0)
    throw std::invalid_argument("points lie in different components of the positive cone");
  if (wall_square_ >= 0) return {};
  if (x0 == x1) return {};

  std::vector<ClassVector> candidates;
  collect_wall_candidates(x0, x1, 0, candidates);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<CrossedWall> out;
  for (const ClassVector& L : candidates) {
    const Rat p0 = space_.pairing(L, x0);
    const Rat p1 = space_.pairing(L, x1);
    if (p0 == 0 || p1 == 0)
      throw std::invalid_argument("segment endpoint lies on a wall");
    if (sgn(p0) != sgn(p1)) out.push_back({Wall{L}, p0 / (p0 - p1)});
  }
  std::sort(out.begin(), out.end(), [](const CrossedWall& lhs, const CrossedWall& rhs) {
    if (lhs.parameter != rhs.parameter) return lhs.parameter < rhs.parameter;
    return lhs.wall.L < rhs.wall.L;
  });
  return out;
}

void ChamberEngine::apply_crossing(std::map<ClassKey, Int>& values, const ClassVector& wall_class,
                                   int from_side_sign) const {
  const ClassVector xi = natural_xi(wall_class);
  const ClassKey plus{wall_class.coords(), xi.coords()};
  const ClassKey minus{(-wall_class).coords(), (xi - wall_class).coords()};

  auto bump = [&values](const ClassKey& key, int delta) {
    auto it = values.try_emplace(key, Int(0)).first;
    it->second += delta;
    if (it->second == 0) values.erase(it);
  };
  // The class pairing positively with the side being left gains the unit;
  // its conjugate loses it. Pinned by the reference example: crossing away
  // from the seed along -K's wall creates value +1 at (-K, 0).
  bump(plus, from_side_sign);
  bump(minus, -from_side_sign);
}

ChamberEngine::Propagation ChamberEngine::propagate(const RationalVector& from,
                                                    std::map<ClassKey, Int> values,
                                                    const RationalVector& to, int depth) const {
  if (from == to) return {std::move(values), {}};
  std::vector<CrossedWall> crossings = walls_crossed(from, to);

  bool has_tie = false;
  for (size_t i = 0; i + 1 < crossings.size(); ++i)
    if (crossings[i].parameter == crossings[i + 1].parameter) {
      has_tie = true;
      break;
    }

  if (has_tie && depth < 6) {
    // Nudge the midpoint off the coincidence and take two generic legs.
    // Distinct-wall crossings commute (each touches its own +/- key pair),
    // so this is a genericity restoration, not a correctness requirement.
    const RationalVector mid = (from + to) * Rat(1, 2);
    for (int k = 0; k < space_.rank(); ++k) {
      for (long denom : {97L, 389L, 1543L, 6151L}) {
        RationalVector mid2 = mid;
        mid2[k] += Rat(1, denom);
        if (space_.square(mid2) <= 0) continue;
        if (space_.pairing(from, mid2) <= 0 || space_.pairing(mid2, to) <= 0) continue;
        try {
          Propagation first = propagate(from, values, mid2, depth + 1);
          Propagation second = propagate(mid2, std::move(first.values), to, depth + 1);
          return {std::move(second.values), xor_wall_sets(first.walls, second.walls)};
        } catch (const std::invalid_argument&) {
          continue;  // nudged midpoint landed on a wall; try another direction
        }
      }
    }
    // No usable nudge found: apply the tied crossings in canonical order.
  }

  std::vector<ClassVector> walls;
  walls.reserve(crossings.size());
  for (const CrossedWall& cw : crossings) {
    const int side = sgn(space_.pairing(cw.wall.L, from));
    apply_crossing(values, cw.wall.L, side);
    walls.push_back(cw.wall.L);
  }
  return {std::move(values), std::move(walls)};
}

ChamberSWFunction ChamberEngine::distinguished_chamber() const {
  return {Chamber{seed_point_, 1, {}}, seed_values_};
}

ChamberSWFunction ChamberEngine::cross_wall(const ChamberSWFunction& f, const Wall& wall,
                                            const RationalVector& to_point) const {
  const ClassVector L = wall.L.lex_positive();
  if (L.is_zero() || space_.square(L) != wall_square_ || !space_.is_characteristic(L))
    throw std::invalid_argument("not a wall class of this lattice");
  if (space_.square(to_point) <= 0)
    throw std::invalid_argument("target point must have positive square");
  const Rat p0 = space_.pairing(L, f.chamber.point);
  const Rat p1 = space_.pairing(L, to_point);
  if (p0 == 0 || p1 == 0 || sgn(p0) == sgn(p1))
    throw std::invalid_argument("wall does not separate the chamber point from the target");

  ChamberSWFunction out = f;
  apply_crossing(out.values, L, sgn(p0));
  out.chamber.point = to_point;
  auto& sep = out.chamber.separating_walls;
  auto it = std::find(sep.begin(), sep.end(), L);
  if (it == sep.end()) {
    sep.push_back(L);
    std::sort(sep.begin(), sep.end());
  } else {
    sep.erase(it);
  }
  return out;
}

ChamberSWFunction ChamberEngine::sw_for_chamber(const RationalVector& target) const {
  if (space_.square(target) <= 0)
    throw std::invalid_argument("chamber points must have positive square");
  const Rat comp = space_.pairing(target, seed_point_);
  if (comp == 0) throw std::invalid_argument("target is orthogonal to the seed ray");
  const bool mirror = comp < 0;

  const RationalVector work = mirror ? -target : target;
  Propagation prop = propagate(seed_point_, seed_values_, work, 0);
  std::sort(prop.walls.begin(), prop.walls.end());

  ChamberSWFunction out;
  out.chamber = Chamber{target, mirror ? -1 : 1, std::move(prop.walls)};
  if (mirror) {
    for (auto& [key, v] : prop.values) out.values.emplace(key, -v);
  } else {
    out.values = std::move(prop.values);
  }
  return out;
}

ChamberSWFunction ChamberEngine::negated_chamber(const ChamberSWFunction& f) const {
  ChamberSWFunction out;
  out.chamber = Chamber{-f.chamber.point, -f.chamber.component_sign, f.chamber.separating_walls};
  for (const auto& [key, v] : f.values) out.values.emplace(key, -v);
  return out;
}

ChamberSWFunction ChamberEngine::transported_by_reflection(const ChamberSWFunction& f,
                                                           const ClassVector& n) const {
  if (space_.square(n) != -1)
    throw std::invalid_argument("reflections are taken in square -1 classes");

  ChamberSWFunction out;
  out.chamber.point = space_.reflect(f.chamber.point, n);
  out.chamber.component_sign = sgn(space_.pairing(out.chamber.point, seed_point_));
  for (const auto& [key, v] : f.values) {
    const ClassVector L(key.first);
    const ClassVector xi(key.second);
    const ClassVector L2 = space_.reflect(L, n);
    const ClassVector xi2 = xi + n * space_.pairing(L, n);
    out.values.emplace(ClassKey{L2.coords(), xi2.coords()}, v);
  }
  return out;
}

C0Report ChamberEngine::check_c0_properties(const ChamberSWFunction& f) const {
  C0Report r;

  r.values_are_signs = !f.values.empty();
  std::map<std::vector<Int>, std::set<std::vector<Int>>> by_l;
  for (const auto& [key, v] : f.values) {
    if (v != 1 && v != -1) r.values_are_signs = false;
    by_l[key.first].insert(key.second);
  }
  for (const auto& [lc, xis] : by_l)
    if (xis.size() > 1) r.values_are_signs = false;

  r.support_count = f.values.size() == (static_cast<size_t>(1) << (ell_ + 1));

  std::vector<ClassVector> ls;
  ls.reserve(by_l.size());
  for (const auto& [lc, xis] : by_l) ls.emplace_back(lc);

  std::optional<Int> best;
  std::vector<ClassVector> rays;
  for (size_t i = 0; i < ls.size(); ++i) {
    for (size_t j = i; j < ls.size(); ++j) {  // pairs with repetition: the
      // one-class-per-sign support still realizes its square on the diagonal
      ClassVector y;
      try {
        y = (ls[i] + ls[j]).divided_by(Int(2));
      } catch (const std::invalid_argument&) {
        continue;  // non-characteristic crafted data
      }
      const Int sq = space_.square(y);
      if (!best || sq > *best) {
        best = sq;
        rays.assign(1, y);
      } else if (sq == *best) {
        rays.push_back(y);
      }
    }
  }
  r.max_pair_square = best.has_value() && *best == c0_square_;

  r.ray_meets_chamber = best.has_value() && *best > 0;
  if (r.ray_meets_chamber) {
    std::set<ClassVector> canonical;
    for (const ClassVector& y : rays) canonical.insert(y.lex_positive());
    for (const ClassVector& y0 : canonical) {
      ClassVector y = y0;
      const Rat toward = space_.pairing(y, f.chamber.point);
      if (toward == 0) {
        r.ray_meets_chamber = false;
        break;
      }
      if (toward < 0) y = -y;
      const RationalVector yr(y);
      bool inside = false;
      try {
        inside = !lies_on_wall(yr) && walls_crossed(f.chamber.point, yr).empty();
      } catch (const std::invalid_argument&) {
        inside = false;
      }
      if (!inside) {
        r.ray_meets_chamber = false;
        break;
      }
    }
  }
  return r;
}

std::vector<SearchedChamber> ChamberEngine::search_distinguished(int radius,
                                                                 int max_denominator) const {
  if (radius <= 0 || max_denominator <= 0)
    throw std::invalid_argument("search radius and denominator bound must be positive");
  if (torsion_ == TorsionTag::Larger)
    throw UnsupportedModel("distinguished-chamber search requires torsion of order at most 2");

  // Every grid point p/q names the same chamber as the primitive integer
  // vector on its ray, and those are exactly the primitive vectors of the
  // integer box of side radius * max_denominator.
  const long long box = static_cast<long long>(radius) * max_denominator;
  const int n = space_.rank();
  {
    double count = 1.0;
    for (int i = 0; i < n; ++i) count *= 2.0 * static_cast<double>(box) + 1.0;
    if (count > 1e8)
      throw std::invalid_argument("search grid too large; reduce radius or denominator bound");
  }

  std::vector<ClassVector> rays;
  std::vector<long long> odo(n, -box);
  while (true) {
    std::vector<Int> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = Int(odo[i]);
    ClassVector u(std::move(coords));
    if (is_lex_positive(u) && content_of(u) == 1 && space_.square(u) > 0) rays.push_back(u);

    int k = n - 1;
    while (k >= 0 && odo[k] == box) odo[k--] = -box;
    if (k < 0) break;
    ++odo[k];
  }

  int threads = 1;
  if (const char* env = std::getenv("SWLAT_THREADS")) {
    threads = std::max(1, std::min(32, std::atoi(env)));
  } else {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = static_cast<int>(std::max(1u, std::min(8u, hw)));
  }
  if (rays.size() < 64) threads = 1;

  using ChamberKey = std::vector<ClassVector>;
  std::map<ChamberKey, std::pair<ClassVector, std::map<ClassKey, Int>>> found;
  std::mutex found_mutex;

  auto worker = [&](int offset) {
    for (size_t i = static_cast<size_t>(offset); i < rays.size();
         i += static_cast<size_t>(threads)) {
      ClassVector u = rays[i];
      if (space_.pairing(u, seed_point_) < 0) u = -u;
      Propagation prop;
      try {
        prop = propagate(seed_point_, seed_values_, RationalVector(u), 0);
      } catch (const std::invalid_argument&) {
        continue;  // ray lies on a wall
      }
      std::sort(prop.walls.begin(), prop.walls.end());
      std::lock_guard<std::mutex> lock(found_mutex);
      auto it = found.find(prop.walls);
      if (it == found.end()) {
        found.emplace(std::move(prop.walls), std::make_pair(u, std::move(prop.values)));
      } else if (u < it->second.first) {
        it->second.first = u;  // keep the lex-least representative, thread-order independent
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (std::thread& th : pool) th.join();
  }

  if (found.empty())
    throw std::runtime_error("every ray of the search grid lies on a wall; enlarge the grid");

  std::set<std::vector<Int>> seed_l_support;
  for (const auto& [key, v] : seed_values_) seed_l_support.insert(key.first);
  auto passes_rule = [&](const ChamberSWFunction& f, const C0Report& rep) {
    if (torsion_ == TorsionTag::Z2) {
      std::set<std::vector<Int>> support;
      for (const auto& [key, v] : f.values) support.insert(key.first);
      return support == seed_l_support;
    }
    return rep.first_three();
  };

  std::vector<SearchedChamber> out;
  for (const auto& [walls, rep_point] : found) {
    ChamberSWFunction plus;
    plus.chamber = Chamber{RationalVector(rep_point.first), 1, walls};
    plus.values = rep_point.second;
    const C0Report report_plus = check_c0_properties(plus);
    out.push_back({plus.chamber, report_plus, passes_rule(plus, report_plus), plus.values.size()});

    const ChamberSWFunction minus = negated_chamber(plus);
    const C0Report report_minus = check_c0_properties(minus);
    out.push_back(
        {minus.chamber, report_minus, passes_rule(minus, report_minus), minus.values.size()});
  }
  std::sort(out.begin(), out.end(), [](const SearchedChamber& lhs, const SearchedChamber& rhs) {
    if (lhs.chamber.separating_walls.size() != rhs.chamber.separating_walls.size())
      return lhs.chamber.separating_walls.size() < rhs.chamber.separating_walls.size();
    if (lhs.chamber.separating_walls != rhs.chamber.separating_walls)
      return lhs.chamber.separating_walls < rhs.chamber.separating_walls;
    return lhs.chamber.component_sign > rhs.chamber.component_sign;
  });
  return out;
}

bool ChamberEngine::reflection_equivariance_check(const ClassVector& n, int trials,
                                                  unsigned seed) const {
  if (space_.square(n) != -1)
    throw std::invalid_argument("reflections are taken in square -1 classes");
  if (trials <= 0) throw std::invalid_argument("trial count must be positive");

  std::mt19937_64 rng(seed);
  const ClassVector base = seed_point_.scaled_to_integer();

  int done = 0;
  long attempts = 0;
  const long max_attempts = 400L * trials;
  while (done < trials) {
    if (++attempts > max_attempts)
      throw std::runtime_error("could not sample enough off-wall points");
    const ClassVector x = biased_positive_sample(space_, base, rng, 7);
    const RationalVector xr(x);

    ChamberSWFunction fx, frx;
    try {
      fx = sw_for_chamber(xr);
      frx = sw_for_chamber(space_.reflect(xr, n));
    } catch (const std::invalid_argument&) {
      continue;  // point (or its image) on a wall: resample
    }
    const ChamberSWFunction moved = transported_by_reflection(fx, n);
    if (moved.values != frx.values) return false;
    ++done;
  }
  return true;
}

bool ChamberEngine::is_sw_trivial_chamber_possible(int samples, unsigned seed) const {
  if (seed_values_.empty()) return true;  // nothing forces a nonzero value anywhere
  if (samples <= 0) throw std::invalid_argument("sample count must be positive");

  // The seed carries value -1 at +K_tilde and +1 at -K_tilde; verify the
  // first, then check on sampled points that after folding into the subcone
  // where every exceptional pairing is nonnegative, the K_tilde wall does not
  // separate the point from the seed. Since folding is by reflections (which
  // transport chamber functions bijectively), every chamber's function keeps
  // a nonzero value at the +/-K_tilde classes.
  const ClassKey k_key{k_tilde_.coords(), natural_xi(k_tilde_).coords()};
  auto it = seed_values_.find(k_key);
  if (it == seed_values_.end() || it->second == 0)
    throw std::logic_error("seed chamber lost its canonical-class value");

  std::mt19937_64 rng(seed);
  const ClassVector base = seed_point_.scaled_to_integer();

  for (int done = 0; done < samples; ++done) {
    ClassVector x = biased_positive_sample(space_, base, rng, 9);

    const Int toward_k0 = space_.pairing(x, k0_);
    if (toward_k0 == 0) throw std::logic_error("positive-square point orthogonal to K0");
    if (toward_k0 < 0) x = -x;

    for (const ClassVector& e : exceptionals_)
      if (space_.pairing(x, e) < 0) x = space_.reflect(x, e);

    for (const ClassVector& e : exceptionals_)
      if (space_.pairing(x, e) < 0) throw std::logic_error("cone folding failed to terminate");
    if (space_.pairing(x, k0_) <= 0) throw std::logic_error("cone folding left the K0 side");
    const Int kt = space_.pairing(k_tilde_, x);
    const Rat kt_seed = space_.pairing(k_tilde_, seed_point_);
    if (!(kt > 0) || !(kt_seed > 0))
      throw std::logic_error("canonical wall separates a folded point from the seed");
  }
  return false;
}

}  // namespace swlat
