#include "torlat/classsets.hpp"

#include <numeric>
#include <set>

#include "doctest.h"

using namespace torlat;

namespace {
Place affine(long p, std::vector<long> cs) {
  return Place::finite_poly(FpPoly::from_coeffs(p, std::move(cs)));
}
AbelianGroupShape shape_of(std::vector<Int> f, size_t r) {
  AbelianGroupShape s;
  s.invariant_factors = std::move(f);
  s.free_rank = r;
  return s;
}
}  // namespace

TEST_CASE("picard groups of open subsets of the projective line") {
  CHECK(picard_open_p1(OpenCurve::affine_line(3)).is_trivial());
  CHECK(picard_open_p1(OpenCurve::projective_line(3)) == shape_of({}, 1));
  OpenCurve deg2{3, {affine(3, {1, 0, 1})}};  // t^2 + 1 irreducible over F_3
  CHECK(picard_open_p1(deg2) == shape_of({2}, 0));
  OpenCurve mixed{3, {affine(3, {1, 0, 1}), affine(3, {0, 1})}};
  CHECK(picard_open_p1(mixed).is_trivial());  // gcd(2, 1) = 1
}

TEST_CASE("unit groups of open subsets") {
  SUBCASE("F_3, removed {infinity, (t)}") {
    OpenCurve c{3, {Place::infinity(), affine(3, {0, 1})}};
    UnitGroup u = units_open_p1(c);
    CHECK(u.torsion_order == 2);
    CHECK(u.free_rank == 1);
    REQUIRE(u.generators.size() == 1);
    CHECK(u.generators[0].first == FpPoly::variable(3));
    CHECK(u.generators[0].second == FpPoly::one(3));
  }
  SUBCASE("affine line: constants only") {
    UnitGroup u = units_open_p1(OpenCurve::affine_line(3));
    CHECK(u.free_rank == 0);
  }
  SUBCASE("F_2, removed {(t), (t-1)}, infinity kept") {
    OpenCurve c{2, {affine(2, {0, 1}), affine(2, {1, 1})}};
    UnitGroup u = units_open_p1(c);
    CHECK(u.free_rank == 1);
    REQUIRE(u.generators.size() == 1);
    // generator t/(t+1) up to inversion
    FpPoly t = FpPoly::variable(2);
    FpPoly t1 = FpPoly::from_coeffs(2, {1, 1});
    bool forward = (u.generators[0].first == t && u.generators[0].second == t1);
    bool backward = (u.generators[0].first == t1 && u.generators[0].second == t);
    CHECK((forward || backward));
  }
  SUBCASE("projective line: constants only") {
    UnitGroup u = units_open_p1(OpenCurve::projective_line(5));
    CHECK(u.free_rank == 0);
    CHECK(u.torsion_order == 4);
  }
}

TEST_CASE("unit rank and picard bookkeeping over all small removed sets") {
  // divisor sequence consistency: rank(units) = |S| - 1 and Pic = Z/gcd for
  // every nonempty removed set with degrees <= 3
  for (long p : {2L, 3L}) {
    std::vector<Place> pool{Place::infinity()};
    for (int d = 1; d <= 3; ++d)
      for (const FpPoly& f : monic_irreducibles(p, d)) pool.push_back(Place::finite_poly(f));
    const size_t n = pool.size();
    // all subsets of size 1..4 over a truncated pool to keep the sweep small
    const size_t limit = std::min(n, static_cast<size_t>(7));
    for (unsigned mask = 1; mask < (1u << limit); ++mask) {
      if (__builtin_popcount(mask) > 4) continue;
      OpenCurve c{p, {}};
      for (size_t i = 0; i < limit; ++i)
        if (mask & (1u << i)) c.removed.push_back(pool[i]);
      UnitGroup u = units_open_p1(c);
      CHECK(u.free_rank == c.removed.size() - 1);
      Int g = 0;
      for (const Place& v : c.removed) g = gcd(g, Int(v.degree()));
      AbelianGroupShape pic = picard_open_p1(c);
      if (g == 1)
        CHECK(pic.is_trivial());
      else
        CHECK(pic == shape_of({g}, 0));
    }
  }
}

TEST_CASE("picard of a shrunken set is a quotient") {
  OpenCurve c{3, {affine(3, {1, 0, 1})}};
  AbelianGroupShape before = picard_open_p1(c);
  OpenCurve more = c;
  more.removed.push_back(affine(3, {2, 2, 1}));  // another degree-2 place
  AbelianGroupShape after = picard_open_p1(more);
  REQUIRE(before == shape_of({2}, 0));
  REQUIRE(after == shape_of({2}, 0));
  more.removed.push_back(affine(3, {0, 1}));
  CHECK(picard_open_p1(more).is_trivial());
}

TEST_CASE("class sets of split tori") {
  CHECK(class_set_split_torus(OpenCurve::affine_line(3), 3).is_trivial());
  CHECK(class_set_split_torus(OpenCurve::projective_line(3), 1) == shape_of({}, 1));
  OpenCurve deg2{3, {affine(3, {1, 0, 1})}};
  CHECK(class_set_split_torus(deg2, 2) == shape_of({2, 2}, 0));
  CHECK(class_set_split_torus(deg2, 2).order() == 4);
}

TEST_CASE("condition (T) witnesses") {
  SUBCASE("affine line needs nothing") {
    ConditionTWitness w = condition_T_split(OpenCurve::affine_line(3), 2);
    CHECK(w.extra_removed.empty());
    CHECK(w.verified);
  }
  SUBCASE("projective line needs one degree-1 place") {
    ConditionTWitness w = condition_T_split(OpenCurve::projective_line(3), 1);
    CHECK(w.extra_removed.size() == 1);
    CHECK(w.extra_removed[0].degree() == 1);
    CHECK(w.verified);
  }
  SUBCASE("degree-2 removed place needs one degree-1 place") {
    OpenCurve deg2{3, {affine(3, {1, 0, 1})}};
    ConditionTWitness w = condition_T_split(deg2, 2);
    CHECK(w.extra_removed.size() == 1);
    CHECK(w.verified);
  }
  SUBCASE("ten-case sweep always verifies") {
    std::vector<OpenCurve> cases = {
        OpenCurve::affine_line(2),
        OpenCurve::affine_line(3),
        OpenCurve::projective_line(2),
        OpenCurve::projective_line(5),
        {2, {affine(2, {1, 1, 1})}},
        {3, {affine(3, {1, 0, 1})}},
        {3, {affine(3, {1, 0, 1}), affine(3, {2, 2, 1})}},
        {2, {affine(2, {1, 1, 1}), affine(2, {1, 1, 0, 1})}},
        {5, {affine(5, {2, 0, 1})}},
        {2, {Place::infinity(), affine(2, {1, 1, 1})}},
    };
    for (const auto& c : cases) {
      ConditionTWitness w = condition_T_split(c, 2);
      CHECK(w.verified);
      CHECK(w.after.is_trivial());
      CHECK(w.extra_removed.size() <= 1);
    }
  }
}

TEST_CASE("reduced forms and class numbers") {
  auto forms23 = reduced_forms(Int(-23));
  REQUIRE(forms23.size() == 3);
  CHECK(forms23[0] == QuadForm{1, 1, 6});
  CHECK(forms23[1] == QuadForm{2, -1, 3});
  CHECK(forms23[2] == QuadForm{2, 1, 3});
  CHECK(reduced_forms(Int(-4)).size() == 1);
  CHECK(reduced_forms(Int(-3)).size() == 1);
  CHECK(reduced_forms(Int(-15)).size() == 2);
  CHECK(reduced_forms(Int(-47)).size() == 5);
  CHECK(reduced_forms(Int(-163)).size() == 1);
  CHECK_THROWS_AS(reduced_forms(Int(-12)), std::invalid_argument);   // not fundamental
  CHECK_THROWS_AS(reduced_forms(Int(5)), std::invalid_argument);     // positive
}

TEST_CASE("class group structures") {
  CHECK(class_group_imaginary_quadratic(Int(-3)).is_trivial());
  CHECK(class_group_imaginary_quadratic(Int(-4)).is_trivial());
  CHECK(class_group_imaginary_quadratic(Int(-23)) == shape_of({3}, 0));
  CHECK(class_group_imaginary_quadratic(Int(-15)) == shape_of({2}, 0));
  CHECK(class_group_imaginary_quadratic(Int(-47)) == shape_of({5}, 0));
  CHECK(class_group_imaginary_quadratic(Int(-84)) == shape_of({2, 2}, 0));  // h = 4, Klein
  CHECK(class_group_imaginary_quadratic(Int(-163)).is_trivial());
}

TEST_CASE("composition laws on the enumerated forms") {
  for (long dval : {-23L, -47L, -71L, -84L}) {
    Int d(dval);
    auto forms = reduced_forms(d);
    QuadForm e = reduce_form(principal_form(d));
    std::set<QuadForm> all(forms.begin(), forms.end());
    REQUIRE(all.count(e) == 1);
    for (const auto& f : forms) {
      // closure and identity
      CHECK(all.count(compose_forms(f, e)) == 1);
      CHECK(compose_forms(f, e) == f);
      CHECK(compose_forms(e, f) == f);
      // inverse
      CHECK(compose_forms(f, inverse_form(f)) == e);
      for (const auto& g : forms) {
        QuadForm fg = compose_forms(f, g);
        CHECK(all.count(fg) == 1);
        CHECK(compose_forms(g, f) == fg);  // commutative
        // associativity against a third element
        for (const auto& h : forms)
          CHECK(compose_forms(compose_forms(f, g), h) == compose_forms(f, compose_forms(g, h)));
      }
    }
  }
}
