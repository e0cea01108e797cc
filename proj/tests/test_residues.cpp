#include "torlat/residues.hpp"

#include "doctest.h"

using namespace torlat;

namespace {
FpPoly poly(long p, std::vector<long> cs) { return FpPoly::from_coeffs(p, std::move(cs)); }
Place pl(long p, std::vector<long> cs) { return Place::finite_poly(poly(p, std::move(cs))); }

SquareClass sq(long p, long n, const FpPoly& num, const FpPoly& den) {
  SquareClass s;
  s.n = n;
  s.element = FactoredElement::from_fraction(GlobalFieldModel::fp_t(p), num, den);
  return s;
}
SymbolClass sym(long p, long n, const FpPoly& anum, const FpPoly& bnum) {
  SymbolClass s;
  s.n = n;
  s.a = FactoredElement::from_fraction(GlobalFieldModel::fp_t(p), anum, FpPoly::one(p));
  s.b = FactoredElement::from_fraction(GlobalFieldModel::fp_t(p), bnum, FpPoly::one(p));
  return s;
}
}  // namespace

TEST_CASE("degree-1 residues") {
  FpPoly t = FpPoly::variable(3);
  CHECK(residue_deg1(sq(3, 2, t, FpPoly::one(3)), pl(3, {0, 1})) == 1);
  CHECK(residue_deg1(sq(3, 2, fp_mul(t, t), FpPoly::one(3)), pl(3, {0, 1})) == 0);
  // (t+1)/t^3 at infinity: ord = 3 - 1 = 2, residue 0 mod 2
  SquareClass f = sq(3, 2, poly(3, {1, 1}), fp_mul(fp_mul(t, t), t));
  CHECK(f.element.ord(Place::infinity()) == 2);
  CHECK(residue_deg1(f, Place::infinity()) == 0);
  // characteristic clash
  CHECK_THROWS_AS(residue_deg1(sq(3, 3, t, FpPoly::one(3)), pl(3, {0, 1})),
                  std::invalid_argument);
}

TEST_CASE("tame symbol pinned values") {
  FpPoly t = FpPoly::variable(3);
  SUBCASE("(t, t) at (t) over F_3 with n = 2 is the class of -1: nontrivial") {
    ResidueClassValue v = residue_deg2_tame(sym(3, 2, t, t), pl(3, {0, 1}));
    CHECK(v.modulus == 2);
    CHECK(!v.trivial());
  }
  SUBCASE("(t, 1-t) at (t): trivial by Steinberg") {
    ResidueClassValue v = residue_deg2_tame(sym(3, 2, t, poly(3, {1, 2})), pl(3, {0, 1}));
    CHECK(v.trivial());
  }
  SUBCASE("constant pairs are trivial at affine places") {
    ResidueClassValue v = residue_deg2_tame(
        sym(3, 2, FpPoly::constant(3, 2), FpPoly::constant(3, 2)), pl(3, {0, 1}));
    CHECK(v.trivial());
  }
  SUBCASE("(t, t) is ramified exactly at (t) and infinity") {
    SymbolCheck c = unramified_symbol_check(sym(3, 2, t, t), {});
    CHECK(!c.unramified);
    REQUIRE(c.ramified_at.size() == 2);
    CHECK(c.ramified_at[0] == pl(3, {0, 1}));
    CHECK(c.ramified_at[1] == Place::infinity());
  }
  SUBCASE("(t, 1-t) is unramified everywhere") {
    SymbolCheck c = unramified_symbol_check(sym(3, 2, t, poly(3, {1, 2})), {});
    CHECK(c.unramified);
  }
  SUBCASE("n > 2 raises the twist flag") {
    SymbolCheck c = unramified_symbol_check(sym(5, 4, FpPoly::variable(5), poly(5, {1, 4})), {});
    CHECK(c.twist_flag);
  }
}

TEST_CASE("tame symbol over Q") {
  SymbolClass s;
  s.n = 2;
  s.a = FactoredElement::from_fraction_q(Int(3), Int(1));
  s.b = FactoredElement::from_fraction_q(Int(3), Int(1));
  // (3,3)_3 = class of -1 mod 3: nonsquare, nontrivial
  ResidueClassValue v = residue_deg2_tame(s, Place::rational_prime(Int(3)));
  CHECK(v.modulus == 2);
  CHECK(!v.trivial());
  // (2,5)_5: class of 2 mod 5: nonsquare
  SymbolClass s2;
  s2.n = 2;
  s2.a = FactoredElement::from_fraction_q(Int(2), Int(1));
  s2.b = FactoredElement::from_fraction_q(Int(5), Int(1));
  ResidueClassValue v2 = residue_deg2_tame(s2, Place::rational_prime(Int(5)));
  CHECK(!v2.trivial());
  // residue characteristic must stay coprime to n
  CHECK_THROWS_AS(residue_deg2_tame(s, Place::rational_prime(Int(2))), std::invalid_argument);
}

TEST_CASE("bilinearity of the tame symbol in the first argument") {
  for (long p : {3L, 5L}) {
    std::vector<FpPoly> pool;
    for (long c0 = 0; c0 < p; ++c0)
      for (long c1 = 0; c1 < p && pool.size() < 8; ++c1)
        if (c0 != 0 || c1 != 0) pool.push_back(poly(p, {c0, c1}));
    GlobalFieldModel m = GlobalFieldModel::fp_t(p);
    std::vector<Place> places = places_up_to(m, 2);
    places.push_back(Place::infinity());
    for (const FpPoly& a : pool)
      for (const FpPoly& a2 : pool)
        for (const FpPoly& b : pool) {
          SymbolClass sab = sym(p, 2, a, b);
          SymbolClass sa2b = sym(p, 2, a2, b);
          SymbolClass sprod = sym(p, 2, fp_mul(a, a2), b);
          for (const Place& v : places) {
            ResidueClassValue r1 = residue_deg2_tame(sab, v);
            ResidueClassValue r2 = residue_deg2_tame(sa2b, v);
            ResidueClassValue rp = residue_deg2_tame(sprod, v);
            CHECK(rp.index % rp.modulus == (r1.index + r2.index) % rp.modulus);
          }
        }
  }
}

TEST_CASE("Steinberg vanishing for sampled a") {
  for (long p : {3L, 5L}) {
    for (long c0 = 0; c0 < p; ++c0)
      for (long c1 = 0; c1 < p; ++c1)
        for (long c2 = 0; c2 < p; ++c2) {
          FpPoly a = poly(p, {c0, c1, c2});
          if (a.is_zero()) continue;
          FpPoly one_minus = fp_sub(FpPoly::one(p), a);
          if (one_minus.is_zero()) continue;
          SymbolClass s;
          s.n = 2;
          s.a = FactoredElement::from_fraction(GlobalFieldModel::fp_t(p), a, FpPoly::one(p));
          s.b = FactoredElement::from_fraction(GlobalFieldModel::fp_t(p), one_minus,
                                               FpPoly::one(p));
          SymbolCheck c = unramified_symbol_check(s, {});
          CHECK(c.unramified);
        }
  }
}

TEST_CASE("unramified degree-1 sweep over F_3(t)") {
  GlobalFieldModel m = GlobalFieldModel::fp_t(3);
  SUBCASE("full geometric place set: exactly the constant classes") {
    auto classes = unramified_h1(m, {}, 2, 4);
    CHECK(classes.size() == 2);
    for (const auto& c : classes) CHECK(c.element.factors.empty());
  }
  SUBCASE("removing only (t) changes nothing: the product formula ties infinity") {
    auto classes = unramified_h1(m, {pl(3, {0, 1})}, 2, 4);
    CHECK(classes.size() == 2);
  }
  SUBCASE("removing (t) and infinity frees the classes of t and -t") {
    auto classes = unramified_h1(m, {pl(3, {0, 1}), Place::infinity()}, 2, 4);
    CHECK(classes.size() == 4);
    for (const auto& c : classes)
      for (const Place& v : c.element.support_places()) {
        if (v == pl(3, {0, 1}) || v.kind == Place::Kind::Infinity) continue;
        CHECK(residue_deg1(c, v) == 0);
      }
  }
  SUBCASE("degree bound zero gives constants only") {
    auto classes = unramified_h1(m, {}, 2, 0);
    CHECK(classes.size() == 2);
  }
  SUBCASE("sum-profile invariant on every swept element") {
    auto classes = unramified_h1(m, {pl(3, {0, 1})}, 2, 4);
    for (const auto& c : classes) {
      long weighted = 0;
      for (const Place& v : c.element.support_places())
        weighted += c.element.ord(v) * v.degree();
      CHECK(weighted == 0);
      // no profile has exactly one nonzero residue at a degree-1 place
      std::vector<Place> nonzero;
      for (const Place& v : c.element.support_places())
        if (c.element.ord(v) % 2 != 0) nonzero.push_back(v);
      if (nonzero.size() == 1) CHECK(nonzero[0].degree() > 1);
    }
  }
}

TEST_CASE("canonical square classes") {
  FpPoly t = FpPoly::variable(3);
  SquareClass s = sq(3, 2, fp_mul(fp_mul(t, t), fp_mul(t, poly(3, {1, 1}))), FpPoly::one(3));
  SquareClass c = s.canonical();
  REQUIRE(c.element.factors.size() == 2);
  CHECK(c.element.factors[0].second == 1);  // t^3 -> t
  CHECK(c.element.factors[1].second == 1);
}
