#include <doctest.h>

#include <swlat/chambers.hpp>
#include <swlat/errors.hpp>
#include <swlat/surface.hpp>

#include <random>
#include <vector>

using namespace swlat;

namespace {

SurfaceLattice general_type(int ksq, int blowups) {
  SurfaceModel m;
  m.kind = SurfaceKind::GeneralTypeMinimal;
  m.ksq = ksq;
  m.blowups = blowups;
  return build(m);
}

ClassVector cv(std::vector<long> coords) {
  std::vector<Int> c(coords.begin(), coords.end());
  return ClassVector(std::move(c));
}

RationalVector rv(std::vector<long> coords) {
  std::vector<Rat> c;
  c.reserve(coords.size());
  for (long x : coords) c.emplace_back(x);
  return RationalVector(std::move(c));
}

/// Move f to `target` by crossing every separating wall one at a time with
/// cross_wall, landing between consecutive crossing parameters. Walls tied at
/// one parameter are crossed from the shared near-side point.
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

}  // namespace

TEST_CASE("reference example pins the crossing sign and the wall") {
  const ChamberEngine eng = ChamberEngine::reference_example();
  CHECK(eng.space().rank() == 17);
  CHECK(eng.wall_square() == -7);
  CHECK(eng.distinguished_chamber().values.empty());

  std::vector<long> wall_coords(17, -1);
  wall_coords[0] = 3;
  const ClassVector wall_class = cv(wall_coords);
  std::vector<long> k_coords(17, 1);
  k_coords[0] = -3;
  const ClassVector k = cv(k_coords);
  CHECK(eng.k_tilde() == k);

  std::vector<long> target_coords(17, -3);
  target_coords[0] = 15;
  const RationalVector omega = rv(target_coords);

  const std::vector<CrossedWall> crossed = eng.walls_crossed(eng.seed_point(), omega);
  REQUIRE(crossed.size() == 1);
  CHECK(crossed[0].wall.L == wall_class);
  CHECK(crossed[0].parameter == Rat(5, 8));

  const ChamberSWFunction f = eng.sw_for_chamber(omega);
  CHECK(f.chamber.component_sign == 1);
  CHECK(f.support_size() == 2);
  CHECK(f.value(wall_class, ClassVector::zero(17)) == 1);
  CHECK(f.value(k, k) == -1);
  REQUIRE(f.chamber.separating_walls.size() == 1);
  CHECK(f.chamber.separating_walls[0] == wall_class);

  // Crossing back is an involution.
  const ChamberSWFunction back = eng.cross_wall(f, crossed[0].wall, eng.seed_point());
  CHECK(back.values.empty());
  CHECK(back.chamber.separating_walls.empty());

  // Building the same chamber through cross_wall matches the propagated one.
  const ChamberSWFunction manual =
      eng.cross_wall(eng.distinguished_chamber(), crossed[0].wall, omega);
  CHECK(manual.values == f.values);

  // A point of the wall itself is recognized, and refuses segment queries.
  std::vector<long> on_wall(17, -3);
  on_wall[0] = 16;
  const RationalVector v = rv(on_wall);
  const auto hit = eng.lies_on_wall(v);
  REQUIRE(hit.has_value());
  CHECK(hit->L == wall_class);
  CHECK_THROWS_AS((void)eng.walls_crossed(eng.seed_point(), v), std::invalid_argument);
  CHECK(!eng.lies_on_wall(eng.seed_point()).has_value());
}

TEST_CASE("wall segment queries validate endpoints") {
  const ChamberEngine eng = ChamberEngine::reference_example();
  std::vector<long> neg(17, 0);
  neg[1] = 1;  // square -1
  CHECK_THROWS_AS((void)eng.walls_crossed(eng.seed_point(), rv(neg)), std::invalid_argument);
  CHECK_THROWS_AS((void)eng.lies_on_wall(rv(neg)), std::invalid_argument);

  // Opposite components are rejected.
  CHECK_THROWS_AS((void)eng.walls_crossed(eng.seed_point(), -eng.seed_point()),
                  std::invalid_argument);

  // Identical points and points on one ray cross nothing.
  CHECK(eng.walls_crossed(eng.seed_point(), eng.seed_point()).empty());
  CHECK(eng.walls_crossed(eng.seed_point(), eng.seed_point() * Rat(3)).empty());
}

TEST_CASE("chamber engines require general-type models") {
  SurfaceModel m;
  m.kind = SurfaceKind::Elliptic;
  m.m1 = 2;
  m.m2 = 3;
  m.pg = 0;
  CHECK_THROWS_AS((void)ChamberEngine::for_surface(build(m)), UnsupportedModel);

  const SurfaceLattice s = general_type(2, 3);
  const ChamberEngine eng = ChamberEngine::for_surface(s);
  CHECK(eng.k_tilde() == s.K_tilde());
  CHECK(eng.wall_square() == Int(2 - 3));
  CHECK(eng.exceptionals().size() == 3);
  CHECK(eng.distinguished_chamber().support_size() == 16);
  CHECK(eng.natural_xi(eng.k_tilde()) == eng.k_tilde());
  CHECK(eng.natural_xi(-eng.k_tilde()) == ClassVector::zero(s.space.rank()));
}

TEST_CASE("seed values depend only on the canonical sign") {
  const SurfaceLattice s = general_type(1, 2);
  const ChamberEngine eng = ChamberEngine::for_surface(s);
  const ChamberSWFunction f = eng.distinguished_chamber();
  const ClassVector& e1 = s.exceptionals[0];
  const ClassVector& e2 = s.exceptionals[1];

  for (int s1 : {+1, -1}) {
    for (int s2 : {+1, -1}) {
      const ClassVector plus = s.K0 + e1 * Int(s1) + e2 * Int(s2);
      const ClassVector minus = -s.K0 + e1 * Int(s1) + e2 * Int(s2);
      CHECK(f.value(plus, eng.natural_xi(plus)) == -1);
      CHECK(f.value(minus, eng.natural_xi(minus)) == 1);
    }
  }
}

TEST_CASE("canonical ray lies on no wall") {
  for (int ksq = 1; ksq <= 9; ++ksq) {
    for (int l : {0, 2, 4}) {
      const SurfaceLattice s = general_type(ksq, l);
      const ChamberEngine eng = ChamberEngine::for_surface(s);
      CAPTURE(ksq);
      CAPTURE(l);
      CHECK(!eng.lies_on_wall(RationalVector(s.K0)).has_value());
    }
  }
}

TEST_CASE("crossing the canonical wall removes the canonical pair") {
  const SurfaceLattice s = general_type(1, 2);
  const ChamberEngine eng = ChamberEngine::for_surface(s);

  // Positive square, positive K0-pairing, negative K_tilde-pairing.
  const RationalVector x = rv({13, 4, 4, 4, 4, 4, 4, 4, 5, 4, 3});
  REQUIRE(eng.space().square(x) == Rat(7));
  REQUIRE(eng.space().pairing(s.K0, x) == Rat(6));
  REQUIRE(eng.space().pairing(s.K_tilde(), x) == Rat(-1));

  const ChamberSWFunction f = eng.sw_for_chamber(x);
  CHECK(f.value(s.K_tilde(), s.K_tilde()) == 0);
  CHECK(f.value(-s.K_tilde(), ClassVector::zero(11)) == 0);

  bool separated_by_canonical = false;
  for (const ClassVector& w : f.chamber.separating_walls)
    if (w == s.K_tilde()) separated_by_canonical = true;
  CHECK(separated_by_canonical);

  CHECK(f.support_size() >= 6);
  CHECK(f.support_size() % 2 == 0);
}

TEST_CASE("propagation is path independent across two-leg routes") {
  const SurfaceLattice s = general_type(1, 2);
  const ChamberEngine eng = ChamberEngine::for_surface(s);
  std::mt19937_64 rng(20260816u);
  std::uniform_int_distribution<long> head(4, 12);
  std::uniform_int_distribution<long> tail(-3, 3);

  auto sample_point = [&]() {
    while (true) {
      std::vector<long> c(11);
      c[0] = head(rng);
      for (int i = 1; i < 11; ++i) c[i] = tail(rng);
      RationalVector p = rv(c);
      if (eng.space().square(p) <= 0) continue;
      if (eng.space().pairing(s.K0, p) < 0) p = -p;
      return p;
    }
  };

  int done = 0;
  int attempts = 0;
  while (done < 20 && attempts < 400) {
    ++attempts;
    const RationalVector mid = sample_point();
    const RationalVector target = sample_point();
    ChamberSWFunction direct, two_leg;
    try {
      direct = eng.sw_for_chamber(target);
      two_leg = walk(eng, eng.sw_for_chamber(mid), target);
    } catch (const std::invalid_argument&) {
      continue;  // a sample (or a leg landing) hit a wall; resample
    }
    CHECK(two_leg.values == direct.values);
    CHECK(two_leg.chamber.separating_walls == direct.chamber.separating_walls);
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("distinguished chamber satisfies the four criteria") {
  for (int ksq = 1; ksq <= 9; ++ksq) {
    for (int l = 0; l <= 3; ++l) {
      const ChamberEngine eng = ChamberEngine::for_surface(general_type(ksq, l));
      const C0Report rep = eng.check_c0_properties(eng.distinguished_chamber());
      CAPTURE(ksq);
      CAPTURE(l);
      CHECK(rep.values_are_signs);
      CHECK(rep.support_count);
      CHECK(rep.max_pair_square);
      CHECK(rep.ray_meets_chamber);
      CHECK(rep.all());
    }
  }
}

TEST_CASE("criteria reports catch broken functions") {
  const SurfaceLattice s = general_type(1, 2);
  const ChamberEngine eng = ChamberEngine::for_surface(s);
  const ChamberSWFunction f = eng.distinguished_chamber();
  const ClassVector kt = s.K_tilde();

  // Dropping one class breaks the support count but not the square maximum:
  // the +/-K0 average survives through the other sign patterns.
  ChamberSWFunction dropped = f;
  dropped.values.erase({kt.coords(), kt.coords()});
  const C0Report rep_dropped = eng.check_c0_properties(dropped);
  CHECK(rep_dropped.values_are_signs);
  CHECK(!rep_dropped.support_count);
  CHECK(rep_dropped.max_pair_square);

  // A value outside {+1, -1} violates the sign clause.
  ChamberSWFunction doubled = f;
  doubled.values[{kt.coords(), kt.coords()}] = 2;
  CHECK(!eng.check_c0_properties(doubled).values_are_signs);

  // Two spin-c classes over one L violate the sign clause too.
  ChamberSWFunction twisted = f;
  twisted.values[{kt.coords(), ClassVector::zero(11).coords()}] = 1;
  CHECK(!eng.check_c0_properties(twisted).values_are_signs);

  // A chamber beyond the canonical wall cannot satisfy all four clauses.
  const RationalVector x = rv({13, 4, 4, 4, 4, 4, 4, 4, 5, 4, 3});
  CHECK(!eng.check_c0_properties(eng.sw_for_chamber(x)).all());
}

TEST_CASE("exceptional reflections transport chamber functions") {
  const SurfaceLattice s = general_type(1, 2);
  const ChamberEngine eng = ChamberEngine::for_surface(s);

  // On the seed chamber the transport is exact and fixes the function.
  const ChamberSWFunction f = eng.distinguished_chamber();
  for (const ClassVector& e : s.exceptionals) {
    const ChamberSWFunction moved = eng.transported_by_reflection(f, e);
    CHECK(moved.values == f.values);
    CHECK(moved.chamber.point == eng.seed_point());
  }

  CHECK(eng.reflection_equivariance_check(s.exceptionals[0], 6));
  CHECK(eng.reflection_equivariance_check(s.exceptionals[1], 6));

  CHECK_THROWS_AS((void)eng.reflection_equivariance_check(s.K0, 3), std::invalid_argument);
  CHECK_THROWS_AS((void)eng.transported_by_reflection(f, s.K0), std::invalid_argument);
}

TEST_CASE("canonical-class reflection is not transport-compatible") {
  const SurfaceLattice s = general_type(1, 2);
  const ChamberEngine eng = ChamberEngine::for_surface(s);
  const ClassVector kt = s.K_tilde();
  REQUIRE(eng.space().square(kt) == -1);

  // The reflected canonical ray lands beyond the canonical wall ...
  const ClassVector rk0 = eng.space().reflect(s.K0, kt);
  CHECK(rk0 == s.K0 * Int(3) + s.exceptionals[0] * Int(2) + s.exceptionals[1] * Int(2));
  REQUIRE(eng.space().pairing(kt, rk0) == -1);

  // ... so the crossing has erased the +/-K_tilde values that the transported
  // seed function still carries: this reflection does not commute with the
  // chamber structure.
  const ChamberSWFunction moved = eng.transported_by_reflection(eng.distinguished_chamber(), kt);
  const ChamberSWFunction actual = eng.sw_for_chamber(RationalVector(rk0));
  CHECK(moved.value(-kt, ClassVector::zero(11)) == -1);
  CHECK(actual.value(-kt, ClassVector::zero(11)) == 0);
  CHECK(moved.values != actual.values);
}

TEST_CASE("opposite chambers carry negated values") {
  const SurfaceLattice s = general_type(1, 2);
  const ChamberEngine eng = ChamberEngine::for_surface(s);
  const RationalVector x = rv({13, 4, 4, 4, 4, 4, 4, 4, 5, 4, 3});

  const ChamberSWFunction f = eng.sw_for_chamber(x);
  const ChamberSWFunction g = eng.sw_for_chamber(-x);
  CHECK(g.chamber.component_sign == -1);
  CHECK(g.values == eng.negated_chamber(f).values);
  CHECK(g.chamber.separating_walls == f.chamber.separating_walls);

  // The separating set is exactly the walls met by the straight segment.
  std::vector<ClassVector> expected;
  for (const CrossedWall& cw : eng.walls_crossed(eng.seed_point(), x))
    expected.push_back(cw.wall.L);
  std::sort(expected.begin(), expected.end());
  CHECK(f.chamber.separating_walls == expected);
}

TEST_CASE("grid search isolates the distinguished pair") {
  SurfaceModel m;
  m.kind = SurfaceKind::GeneralTypeMinimal;
  m.ksq = 1;
  m.blowups = 2;
  GramMatrix gram = {{Int(1), Int(0), Int(0)}, {Int(0), Int(-1), Int(0)}, {Int(0), Int(0), Int(-1)}};
  const ClassVector k0 = cv({1, 0, 0});
  const std::vector<ClassVector> es = {cv({0, 1, 0}), cv({0, 0, 1})};

  const SurfaceLattice s = build_override(m, gram, k0, es);
  const ChamberEngine eng = ChamberEngine::for_surface(s);
  CHECK(eng.wall_square() == -1);

  const std::vector<SearchedChamber> found = eng.search_distinguished(3, 2);
  CHECK(found.size() > 2);  // the grid sees chambers beyond the distinguished pair

  int passing = 0;
  int seen_components = 0;
  for (const SearchedChamber& sc : found) {
    if (!sc.passes) continue;
    ++passing;
    seen_components += sc.chamber.component_sign;
    CHECK(sc.chamber.separating_walls.empty());
    CHECK(sc.support == 8);
    CHECK(sc.report.first_three());
  }
  CHECK(passing == 2);
  CHECK(seen_components == 0);  // one from each component

  // With 2-torsion the acceptance rule switches to L-support equality and
  // still isolates the same pair.
  m.torsion2 = TorsionTag::Z2;
  const ChamberEngine eng_z2 = ChamberEngine::for_surface(build_override(m, gram, k0, es));
  int passing_z2 = 0;
  for (const SearchedChamber& sc : eng_z2.search_distinguished(3, 2))
    if (sc.passes) {
      ++passing_z2;
      CHECK(sc.chamber.separating_walls.empty());
    }
  CHECK(passing_z2 == 2);

  m.torsion2 = TorsionTag::Larger;
  const ChamberEngine eng_big = ChamberEngine::for_surface(build_override(m, gram, k0, es));
  CHECK_THROWS_AS((void)eng_big.search_distinguished(2, 1), UnsupportedModel);

  CHECK_THROWS_AS((void)eng.search_distinguished(0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)eng.search_distinguished(500, 500), std::invalid_argument);
}

TEST_CASE("zero functions are impossible on seeded engines") {
  CHECK(ChamberEngine::reference_example().is_sw_trivial_chamber_possible(5));
  CHECK(!ChamberEngine::for_surface(general_type(1, 2)).is_sw_trivial_chamber_possible(20));
  CHECK(!ChamberEngine::for_surface(general_type(3, 0)).is_sw_trivial_chamber_possible(20));
  CHECK(!ChamberEngine::for_surface(general_type(2, 4)).is_sw_trivial_chamber_possible(20));
}
