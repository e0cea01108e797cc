#include <map>
#include <utility>

#include "doctest.h"
#include "torlat/glzfin.hpp"

using namespace torlat;

namespace {
IntMat m22(long a, long b, long c, long d) { return mat_from_rows(2, 2, {a, b, c, d}); }
}

TEST_CASE("close_group basics") {
  MatrixGroup triv = close_group({int_identity(2)}, 10);
  CHECK(triv.order() == 1);

  MatrixGroup c4 = close_group({m22(0, -1, 1, 0)}, 10);
  CHECK(c4.order() == 4);
  CHECK(iso_label(c4.table()) == "C4");

  CHECK_THROWS_AS(close_group({m22(1, 1, 0, 1)}, 100), ExceedsBound);
  CHECK_THROWS_AS(close_group({m22(2, 0, 0, 1)}, 100), std::invalid_argument);
}

TEST_CASE("maximal groups have orders 8 and 12") {
  CHECK(gl2_square_maximal().order() == 8);
  CHECK(gl2_hexagonal_maximal().order() == 12);
  CHECK(iso_label(gl2_square_maximal().table()) == "D4");
  CHECK(iso_label(gl2_hexagonal_maximal().table()) == "D6");
}

TEST_CASE("every element of a closed group has order dividing the group order") {
  for (const MatrixGroup& g : {gl2_square_maximal(), gl2_hexagonal_maximal()}) {
    for (const auto& m : g.elements) {
      OrderResult r = matrix_order(m, static_cast<unsigned long>(g.order()));
      CHECK(r.finite);
      CHECK(g.order() % r.order == 0);
    }
  }
}

TEST_CASE("gl2 classification yields exactly 13 classes") {
  ConjClassTable t = enumerate_finite_subgroups_gl2();
  CHECK(t.classes.size() == 13);

  // trivial group appears exactly once
  int trivial = 0;
  for (const auto& c : t.classes)
    if (c.order == 1) ++trivial;
  CHECK(trivial == 1);

  // expected multiset of (order, label)
  std::map<std::pair<size_t, std::string>, int> hist;
  for (const auto& c : t.classes) hist[{c.order, c.label}]++;
  CHECK(hist[{1, "C1"}] == 1);
  CHECK(hist[{2, "C2"}] == 3);
  CHECK(hist[{3, "C3"}] == 1);
  CHECK(hist[{4, "C4"}] == 1);
  CHECK(hist[{4, "V4"}] == 2);
  CHECK(hist[{6, "C6"}] == 1);
  CHECK(hist[{6, "S3"}] == 2);
  CHECK(hist[{8, "D4"}] == 1);
  CHECK(hist[{12, "D6"}] == 1);
}

TEST_CASE("classification is stable under permuted element order") {
  ConjClassTable a = enumerate_finite_subgroups_gl2();
  ConjClassTable b = enumerate_finite_subgroups_gl2(9876543210ULL);
  REQUIRE(a.classes.size() == b.classes.size());
  for (size_t i = 0; i < a.classes.size(); ++i) {
    CHECK(a.classes[i].order == b.classes[i].order);
    CHECK(a.classes[i].label == b.classes[i].label);
    REQUIRE(a.classes[i].representative.elements.size() ==
            b.classes[i].representative.elements.size());
    for (size_t j = 0; j < a.classes[i].representative.elements.size(); ++j)
      CHECK(mat_eq(a.classes[i].representative.elements[j],
                   b.classes[i].representative.elements[j]));
  }
}

TEST_CASE("the two reflection classes stay distinct with a mod-2 certificate") {
  MatrixGroup r1 = close_group({m22(1, 0, 0, -1)}, 4);
  MatrixGroup r2 = close_group({m22(0, 1, 1, 0)}, 4);
  ConjugacyResult r = conjugate_subgroups(r1, r2);
  CHECK(r.status == ConjugacyStatus::None);
  auto mod2 = subgroups_conjugate_mod_m(r1, r2, 2);
  REQUIRE(mod2.has_value());
  CHECK(!*mod2);
}

TEST_CASE("the two S3 classes are separated mod 3") {
  IntMat rho3 = m22(0, -1, 1, -1);
  MatrixGroup h1 = close_group({rho3, m22(0, 1, 1, 0)}, 6);
  MatrixGroup h2 = close_group({rho3, m22(1, 0, 1, -1)}, 6);
  CHECK(h1.order() == 6);
  CHECK(h2.order() == 6);
  ConjugacyResult r = conjugate_subgroups(h1, h2);
  CHECK(r.status == ConjugacyStatus::None);
  auto mod3 = subgroups_conjugate_mod_m(h1, h2, 3);
  REQUIRE(mod3.has_value());
  CHECK(!*mod3);
}

TEST_CASE("subgroup conjugacy finds witnesses for conjugate subgroups") {
  SplitMix64 rng(4242);
  MatrixGroup c4 = close_group({m22(0, -1, 1, 0)}, 4);
  for (int t = 0; t < 5; ++t) {
    UnimodularPair u = random_unimodular(2, rng);
    std::vector<IntMat> conj;
    for (const auto& m : c4.elements) conj.push_back(u.m * m * u.minv);
    MatrixGroup moved = close_group(conj, 4);
    ConjugacyResult r = conjugate_subgroups(c4, moved, 5, 10);
    REQUIRE(r.status == ConjugacyStatus::Found);
    // verify: X maps c4 onto moved elementwise as a set
    for (const auto& m : c4.elements) {
      IntMat image = r.conjugator * m * unimodular_inverse(r.conjugator);
      CHECK(moved.element_index(image) >= 0);
    }
  }
}

TEST_CASE("minkowski reduction check") {
  CHECK(minkowski_reduction_check(int_identity(2)) == MinkowskiCheck::Pass);
  IntMat negid = m22(-1, 0, 0, -1);
  CHECK(minkowski_reduction_check(negid) == MinkowskiCheck::Pass);
  CHECK_THROWS_AS(minkowski_reduction_check(m22(1, 1, 0, 1)), std::invalid_argument);
}

TEST_CASE("minkowski sweep over random conjugates of finite-order elements") {
  ConjClassTable t = enumerate_finite_subgroups_gl2();
  SplitMix64 rng(20260808);
  for (const auto& c : t.classes)
    for (const auto& m : c.representative.elements) {
      for (int trial = 0; trial < 25; ++trial) {
        UnimodularPair u = random_unimodular(2, rng);
        CHECK(minkowski_reduction_check(u.m * m * u.minv) == MinkowskiCheck::Pass);
      }
    }
}
