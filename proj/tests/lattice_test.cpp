#include <doctest.h>
#include <swlat/lattice.hpp>

#include <random>

#include "oracles.hpp"

using namespace swlat;

namespace {

ClassVector cv(std::vector<int> v) {
  std::vector<Int> c(v.begin(), v.end());
  return ClassVector(std::move(c));
}

RationalVector rv(std::vector<Rat> v) { return RationalVector(std::move(v)); }

GramMatrix diag(std::vector<int> d) {
  int n = static_cast<int>(d.size());
  GramMatrix g(n, std::vector<Int>(n, Int(0)));
  for (int i = 0; i < n; ++i) g[i][i] = d[i];
  return g;
}

}  // namespace

TEST_CASE("class vector arithmetic and ordering") {
  ClassVector a = cv({1, -2, 3});
  ClassVector b = cv({0, 5, -1});
  CHECK((a + b) == cv({1, 3, 2}));
  CHECK((a - b) == cv({1, -7, 4}));
  CHECK((-a) == cv({-1, 2, -3}));
  CHECK((a * Int(3)) == cv({3, -6, 9}));
  CHECK(a != b);
  CHECK(cv({0, 1}) < cv({1, -5}));
  CHECK(cv({1, -5}) < cv({1, -4}));
  CHECK_FALSE(cv({1, 0}) < cv({1, 0}));
  CHECK(ClassVector::zero(3).is_zero());
  CHECK_FALSE(a.is_zero());
  CHECK(a.str() == "(1, -2, 3)");
  CHECK_THROWS_AS(a + cv({1, 2}), std::invalid_argument);
}

TEST_CASE("divided_by and lex_positive") {
  CHECK(cv({2, -4, 6}).divided_by(2) == cv({1, -2, 3}));
  CHECK_THROWS_AS(cv({1, 2}).divided_by(2), std::invalid_argument);
  CHECK_THROWS_AS(cv({1, 2}).divided_by(0), std::invalid_argument);
  CHECK(cv({0, -1, 2}).lex_positive() == cv({0, 1, -2}));
  CHECK(cv({0, 1, -2}).lex_positive() == cv({0, 1, -2}));
  CHECK(ClassVector::zero(2).lex_positive() == ClassVector::zero(2));
}

TEST_CASE("rational vector scaling to a primitive integer point") {
  RationalVector v = rv({Rat(3, 2), Rat(-9, 4)});
  CHECK(v.scaled_to_integer() == cv({2, -3}));
  RationalVector w(cv({4, -6}));
  CHECK(w.scaled_to_integer() == cv({2, -3}));
  CHECK(RationalVector(ClassVector::zero(2)).scaled_to_integer() == ClassVector::zero(2));
}

TEST_CASE("lattice validation accepts (1, n-1) unimodular forms only") {
  CHECK_NOTHROW(LatticeSpace::checked(diag({1, -1, -1})));
  CHECK_NOTHROW(LatticeSpace::checked(diag({1})));
  GramMatrix hyperbolic = {{Int(0), Int(1)}, {Int(1), Int(0)}};
  CHECK_NOTHROW(LatticeSpace::checked(hyperbolic));
  GramMatrix hyperbolic_odd = {{Int(0), Int(1)}, {Int(1), Int(1)}};
  CHECK_NOTHROW(LatticeSpace::checked(hyperbolic_odd));

  CHECK_THROWS_AS(LatticeSpace::checked(diag({1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(LatticeSpace::checked(diag({-1, -1})), std::invalid_argument);
  CHECK_THROWS_AS(LatticeSpace::checked(diag({2, -1})), std::invalid_argument);
  GramMatrix asym = {{Int(1), Int(2)}, {Int(0), Int(-1)}};
  CHECK_THROWS_AS(LatticeSpace::checked(asym), std::invalid_argument);
  GramMatrix ragged = {{Int(1), Int(0)}, {Int(0)}};
  CHECK_THROWS_AS(LatticeSpace::checked(ragged), std::invalid_argument);

  CHECK_NOTHROW(LatticeSpace::unchecked(diag({1, 1})));
}

TEST_CASE("signature and determinant") {
  CHECK(LatticeSpace::signature_of(diag({1, -1, -1})) == std::tuple<int, int, int>{1, 2, 0});
  GramMatrix hyperbolic = {{Int(0), Int(1)}, {Int(1), Int(0)}};
  CHECK(LatticeSpace::signature_of(hyperbolic) == std::tuple<int, int, int>{1, 1, 0});
  GramMatrix pd = {{Int(2), Int(1)}, {Int(1), Int(2)}};
  CHECK(LatticeSpace::signature_of(pd) == std::tuple<int, int, int>{2, 0, 0});
  GramMatrix degenerate = {{Int(1), Int(1)}, {Int(1), Int(1)}};
  CHECK(LatticeSpace::signature_of(degenerate) == std::tuple<int, int, int>{1, 0, 1});
  CHECK(LatticeSpace::signature_of(diag({0})) == std::tuple<int, int, int>{0, 0, 1});

  CHECK(LatticeSpace::determinant_of(hyperbolic) == -1);
  CHECK(LatticeSpace::determinant_of(diag({1, -1, -1})) == 1);
  CHECK(LatticeSpace::determinant_of(pd) == 3);
  CHECK(LatticeSpace::determinant_of(degenerate) == 0);
  GramMatrix zero_pivot = {{Int(0), Int(2)}, {Int(2), Int(0)}};
  CHECK(LatticeSpace::determinant_of(zero_pivot) == -4);
}

TEST_CASE("pairing, squares, and characteristic vectors") {
  auto L = LatticeSpace::checked(diag({1, -1, -1}));
  CHECK(L.pairing(cv({1, 2, 3}), cv({4, 5, 6})) == Int(4 - 10 - 18));
  CHECK(L.square(cv({3, 1, 1})) == 7);
  CHECK(L.pairing(cv({1, 0, 0}), rv({Rat(1, 2), Rat(1, 3), Rat(0)})) == Rat(1, 2));
  CHECK(L.square(rv({Rat(1, 2), Rat(0), Rat(0)})) == Rat(1, 4));

  CHECK(L.is_characteristic(cv({1, 1, 1})));
  CHECK(L.is_characteristic(cv({3, 1, -1})));
  CHECK_FALSE(L.is_characteristic(cv({0, 1, 1})));
  CHECK_FALSE(L.is_characteristic(ClassVector::zero(3)));
  REQUIRE(L.characteristic_parity().has_value());
  CHECK(*L.characteristic_parity() == std::vector<int>{1, 1, 1});

  GramMatrix hyperbolic = {{Int(0), Int(1)}, {Int(1), Int(0)}};
  auto U = LatticeSpace::checked(hyperbolic);
  // G v = (v2, v1); diag(G) = (0, 0): both coordinates must be even.
  REQUIRE(U.characteristic_parity().has_value());
  CHECK(*U.characteristic_parity() == std::vector<int>{0, 0});
  CHECK(U.is_characteristic(cv({2, -4})));
  CHECK_FALSE(U.is_characteristic(cv({1, 2})));

  GramMatrix hyperbolic_odd = {{Int(0), Int(1)}, {Int(1), Int(1)}};
  auto Uo = LatticeSpace::checked(hyperbolic_odd);
  // G v = (v2, v1 + v2); diag = (0, 1): v2 even, v1 odd.
  REQUIRE(Uo.characteristic_parity().has_value());
  CHECK(*Uo.characteristic_parity() == std::vector<int>{1, 0});
  CHECK(Uo.is_characteristic(cv({3, 0})));
  CHECK_FALSE(Uo.is_characteristic(cv({2, 0})));
}

TEST_CASE("reflection in a square-minus-one class") {
  auto L = LatticeSpace::checked(diag({1, -1, -1}));
  ClassVector e1 = cv({0, 1, 0});
  CHECK(L.reflect(cv({3, 1, 2}), e1) == cv({3, -1, 2}));
  CHECK_THROWS_AS(L.reflect(cv({1, 0, 0}), cv({1, 0, 0})), std::invalid_argument);

  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> coord(-5, 5);
  ClassVector n = cv({1, 1, 1});  // square -1
  REQUIRE(L.square(n) == -1);
  for (int t = 0; t < 50; ++t) {
    ClassVector a = cv({coord(rng), coord(rng), coord(rng)});
    ClassVector b = cv({coord(rng), coord(rng), coord(rng)});
    CHECK(L.pairing(L.reflect(a, n), L.reflect(b, n)) == L.pairing(a, b));
    CHECK(L.reflect(L.reflect(a, n), n) == a);  // involution
  }

  RationalVector w = rv({Rat(1, 2), Rat(1, 3), Rat(-1)});
  RationalVector rw = L.reflect(w, e1);
  CHECK(rw == rv({Rat(1, 2), Rat(-1, 3), Rat(-1)}));
}

TEST_CASE("isometry test and matrix action") {
  auto L = LatticeSpace::checked(diag({1, -1, -1}));
  IntMatrix id = {{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}};
  IntMatrix swap12 = {{Int(1), Int(0), Int(0)}, {Int(0), Int(0), Int(1)}, {Int(0), Int(1), Int(0)}};
  IntMatrix flip1 = {{Int(1), Int(0), Int(0)}, {Int(0), Int(-1), Int(0)}, {Int(0), Int(0), Int(1)}};
  IntMatrix scale = {{Int(2), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}};
  CHECK(L.is_isometry(id));
  CHECK(L.is_isometry(swap12));
  CHECK(L.is_isometry(flip1));
  CHECK_FALSE(L.is_isometry(scale));
  CHECK_FALSE(L.is_isometry({{Int(1)}}));

  CHECK(L.apply(swap12, cv({5, 1, 2})) == cv({5, 2, 1}));
  // The matrix of reflection in e1 acts like the reflect() routine.
  ClassVector e1 = cv({0, 1, 0});
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (int t = 0; t < 20; ++t) {
    ClassVector a = cv({coord(rng), coord(rng), coord(rng)});
    CHECK(L.apply(flip1, a) == L.reflect(a, e1));
  }
}

TEST_CASE("enumeration: pinned small cases") {
  auto L2 = LatticeSpace::checked(diag({1, -1}));
  auto sols = L2.enumerate_with_square(0, RationalVector(cv({1, 0})), Rat(1), false);
  std::vector<ClassVector> expect = {cv({-1, -1}), cv({-1, 1}), cv({0, 0}), cv({1, -1}), cv({1, 1})};
  CHECK(sols == expect);

  auto L3 = LatticeSpace::checked(diag({1, -1, -1}));
  auto roots = L3.enumerate_with_square(-1, RationalVector(cv({1, 0, 0})), Rat(0), false);
  std::vector<ClassVector> expect3 = {cv({0, -1, 0}), cv({0, 0, -1}), cv({0, 0, 1}), cv({0, 1, 0})};
  CHECK(roots == expect3);

  auto chars = L2.enumerate_with_square(0, RationalVector(cv({1, 0})), Rat(3), true);
  CHECK(chars.size() == 8);  // (+-1,+-1), (+-3,+-3)
  for (const auto& v : chars) CHECK(L2.is_characteristic(v));

  // Infeasible budget: x.x = 9 forces |x.anchor| >= 3 > 1.
  CHECK(L2.enumerate_with_square(9, RationalVector(cv({1, 0})), Rat(1), false).empty());
  CHECK(L2.enumerate_with_square(0, RationalVector(cv({1, 0})), Rat(-1), false).empty());
  CHECK_THROWS_AS(L2.enumerate_with_square(0, RationalVector(cv({0, 1})), Rat(1), false),
                  std::invalid_argument);
}

TEST_CASE("enumeration agrees with the box-scan oracle on random lattices") {
  std::mt19937_64 rng(20260816);
  std::uniform_int_distribution<int> rank_dist(1, 4);
  std::uniform_int_distribution<int> square_dist(-9, 9);
  std::uniform_int_distribution<int> bound_num(0, 6);
  std::uniform_int_distribution<int> bound_den(1, 3);
  std::uniform_int_distribution<int> anchor_perturb(-1, 1);
  int nontrivial = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int rank = rank_dist(rng);
    auto rl = swlat_test::random_lattice(rng, rank, 4);
    auto space = LatticeSpace::checked(rl.gram);

    // Anchor: the transported positive vector, occasionally nudged by a
    // rational perturbation (kept only if the square stays positive).
    RationalVector anchor(rl.positive_vector);
    RationalVector nudged = anchor;
    for (int i = 0; i < rank; ++i) nudged[i] += Rat(anchor_perturb(rng), 2);
    if (space.square(nudged) > 0) anchor = nudged;

    Int s = square_dist(rng);
    Rat bound(bound_num(rng), bound_den(rng));
    bool char_only = (trial % 2) == 0;

    // Keep the brute-force scan tractable; skipped trials are compensated by
    // the non-vacuity check below.
    if (swlat_test::oracle_box_volume(space, s, anchor, bound) > 2'000'000) continue;

    auto got = space.enumerate_with_square(s, anchor, bound, char_only);
    auto want = swlat_test::oracle_enumerate(space, s, anchor, bound, char_only);
    REQUIRE(got == want);
    if (!got.empty()) ++nontrivial;
  }
  CHECK(nontrivial > 40);  // the comparison must not be vacuous
}

TEST_CASE("no vectors of positive square orthogonal to a positive vector") {
  auto L = LatticeSpace::checked(diag({1, -1, -1}));
  CHECK(L.hodge_index_violations(cv({1, 0, 0}), 2).empty());
  CHECK(L.hodge_index_violations(cv({2, 1, 0}), 2).empty());

  auto bad = LatticeSpace::unchecked(diag({1, 1}));
  auto viol = bad.hodge_index_violations(cv({1, 0}), 2);
  std::vector<ClassVector> expect = {cv({0, -2}), cv({0, -1}), cv({0, 1}), cv({0, 2})};
  CHECK(viol == expect);
}
