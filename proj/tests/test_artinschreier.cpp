#include "torlat/artinschreier.hpp"

#include <set>

#include "doctest.h"

using namespace torlat;

namespace {
FpPoly poly(long p, std::vector<long> cs) { return FpPoly::from_coeffs(p, std::move(cs)); }

// brute-force count of nonzero classes of polynomials of degree <= d modulo
// the wp image intersected with that degree range
long brute_force_class_count(long p, int d) {
  std::vector<FpPoly> all;
  std::vector<long> cs(static_cast<size_t>(d) + 1, 0);
  for (;;) {
    all.push_back(FpPoly::from_coeffs(p, cs));
    size_t pos = 0;
    while (pos < cs.size() && ++cs[pos] == p) {
      cs[pos] = 0;
      ++pos;
    }
    if (pos == cs.size()) break;
  }
  // image polynomials of degree <= d
  std::set<FpPoly> image;
  std::vector<long> gs(static_cast<size_t>(d / p) + 1, 0);
  for (;;) {
    FpPoly w = wp(FpPoly::from_coeffs(p, gs));
    if (w.degree() <= d) image.insert(w);
    size_t pos = 0;
    while (pos < gs.size() && ++gs[pos] == p) {
      gs[pos] = 0;
      ++pos;
    }
    if (pos == gs.size()) break;
  }
  // cosets
  std::set<FpPoly> reps;
  for (const FpPoly& a : all) {
    FpPoly canon = a;
    for (const FpPoly& w : image) {
      FpPoly cand = fp_sub(a, w);
      if (cand < canon) canon = cand;
    }
    reps.insert(canon);
  }
  return static_cast<long>(reps.size()) - 1;  // drop the zero class
}
}  // namespace

TEST_CASE("wp operator basics") {
  CHECK(wp(poly(2, {0, 1})) == poly(2, {0, 1, 1}));       // t -> t^2 + t
  CHECK(wp(FpPoly::constant(5, 3)).is_zero());            // constants die
  CHECK(wp(poly(3, {0, 1})) == poly(3, {0, 2, 0, 1}));    // t -> t^3 - t
  // additivity on sampled pairs
  for (long p : {2L, 3L}) {
    SplitMix64 rng(42 + static_cast<uint64_t>(p));
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<long> a(1 + rng.below(4)), b(1 + rng.below(4));
      for (auto& c : a) c = static_cast<long>(rng.below(static_cast<uint64_t>(p)));
      for (auto& c : b) c = static_cast<long>(rng.below(static_cast<uint64_t>(p)));
      FpPoly fa = FpPoly::from_coeffs(p, a), fb = FpPoly::from_coeffs(p, b);
      CHECK(wp(fp_add(fa, fb)) == fp_add(wp(fa), wp(fb)));
    }
  }
}

TEST_CASE("wp image membership") {
  WpMembership yes = wp_image_member(2, poly(2, {0, 1, 1}), 3);
  CHECK(yes.member);
  CHECK(wp(yes.witness) == poly(2, {0, 1, 1}));

  WpMembership no = wp_image_member(2, poly(2, {0, 1}), 3);
  CHECK(!no.member);

  WpMembership zero = wp_image_member(2, FpPoly::zero(2), 3);
  CHECK(zero.member);
  CHECK(zero.witness.is_zero());

  // brute-force cross-check on all small polynomials
  for (long p : {2L, 3L}) {
    std::vector<long> cs(4, 0);
    for (;;) {
      FpPoly a = FpPoly::from_coeffs(p, cs);
      WpMembership m = wp_image_member(p, a, 4);
      bool brute = false;
      std::vector<long> gs(3, 0);
      for (;;) {
        if (wp(FpPoly::from_coeffs(p, gs)) == a) brute = true;
        size_t pos = 0;
        while (pos < gs.size() && ++gs[pos] == p) {
          gs[pos] = 0;
          ++pos;
        }
        if (pos == gs.size()) break;
      }
      CHECK(m.member == brute);
      if (m.member) CHECK(wp(m.witness) == a);
      size_t pos = 0;
      while (pos < cs.size() && ++cs[pos] == p) {
        cs[pos] = 0;
        ++pos;
      }
      if (pos == cs.size()) break;
    }
  }
}

TEST_CASE("canonical reduction is idempotent") {
  for (long p : {2L, 3L}) {
    SplitMix64 rng(7 * static_cast<uint64_t>(p));
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<long> cs(1 + rng.below(7));
      for (auto& c : cs) c = static_cast<long>(rng.below(static_cast<uint64_t>(p)));
      WpReduction r1 = wp_reduce(FpPoly::from_coeffs(p, cs));
      WpReduction r2 = wp_reduce(r1.canonical);
      CHECK(r2.canonical == r1.canonical);
      CHECK(r2.witness.is_zero());
    }
  }
}

TEST_CASE("class counts match brute force and the p-step growth law") {
  // p = 2, D = 3: 7 nonzero classes; p = 2, D = 1: 3 nonzero classes
  CHECK(enumerate_as_classes(2, 3).size() == 7);
  CHECK(enumerate_as_classes(2, 1).size() == 3);
  for (long p : {2L, 3L}) {
    std::vector<long> counts;
    for (int d = 1; d <= 4; ++d) {
      long canon = static_cast<long>(enumerate_as_classes(p, d).size());
      CHECK(canon == brute_force_class_count(p, d));
      counts.push_back(canon);
    }
    // non-decreasing, and strictly increasing across every window of width p
    for (size_t i = 0; i + 1 < counts.size(); ++i) CHECK(counts[i] <= counts[i + 1]);
    for (size_t i = 0; i + static_cast<size_t>(p) < counts.size(); ++i)
      CHECK(counts[i] < counts[i + static_cast<size_t>(p)]);
  }
}

TEST_CASE("unramified certificates") {
  ASCertificate c2 = as_unramified_certificate(2, poly(2, {0, 1}));
  CHECK(c2.derivative_constant == 1);  // -1 = 1 in F_2
  CHECK(c2.derivative_is_unit);
  ASCertificate c3 = as_unramified_certificate(3, poly(3, {0, 1}));
  CHECK(c3.derivative_constant == 2);  // -1 = 2 in F_3
  CHECK_THROWS_AS(as_unramified_certificate(2, poly(2, {0, 1, 1})), std::invalid_argument);
}

TEST_CASE("norm tori from artin-schreier classes") {
  ASNormTorus t2 = as_norm_torus(2, poly(2, {0, 1}));
  CHECK(t2.torus.dimension() == 1);
  CHECK(t2.torus.char_action.act(1)(0, 0) == -1);  // sign action
  CHECK(t2.datum.ramified_places.empty());

  ASNormTorus t3 = as_norm_torus(3, poly(3, {0, 1}));
  CHECK(t3.torus.dimension() == 2);  // rank-2 norm-one lattice for Z/3

  // good reduction at every sampled affine place: inertia is trivial there
  GlobalFieldModel m = GlobalFieldModel::fp_t(2);
  int checked = 0;
  for (const Place& v : places_up_to(m, 5)) {
    Subgroup iv = inertia(t2.datum, v);
    CHECK(good_reduction_at(t2.torus, iv));
    ++checked;
  }
  CHECK(checked >= 10);

  // distinct classes give distinct data tags
  ASNormTorus ta = as_norm_torus(2, poly(2, {0, 1}));
  ASNormTorus tb = as_norm_torus(2, poly(2, {0, 0, 0, 1}));
  CHECK(!(ta.datum.as_element == tb.datum.as_element));
  WpMembership diff = wp_image_member(2, fp_sub(ta.datum.as_element, tb.datum.as_element), 4);
  CHECK(!diff.member);

  CHECK_THROWS_AS(as_norm_torus(2, wp(poly(2, {1, 1, 1}))), std::invalid_argument);
}

TEST_CASE("monotone growth realized over long windows") {
  for (long p : {2L, 3L}) {
    long prev = static_cast<long>(enumerate_as_classes(p, 1).size());
    long last = static_cast<long>(enumerate_as_classes(p, 8).size());
    CHECK(last > prev);
  }
}
