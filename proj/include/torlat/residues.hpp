#pragma once

#include <vector>

#include "torlat/places.hpp"

// Degree-1 and degree-2 residue maps at tame places of Q and F_p(t),
// square/symbol classes carried in factored form, and the brute-force
// unramified-class sweeps over rational function fields. Only tame residues
// (residue characteristic coprime to the modulus) are implemented; in degree
// 2 the modulus n = 2 is the primary case, and n > 2 requests carry a twist
// flag because the coefficient twist is not applied.

namespace torlat {

// nonzero field element in factored form
struct FactoredElement {
  GlobalFieldModel model;
  long ff_constant = 1;  // constant unit in F_p^x (function fields)
  int q_sign = 1;        // sign (rationals)
  std::vector<std::pair<Place, long>> factors;  // finite places, nonzero exponents

  long ord(const Place& v) const;  // ord at any place, including infinity
  long total_degree() const;       // function fields: sum of exp * deg
  std::vector<Place> support_places() const;  // including infinity when relevant

  static FactoredElement from_fraction(const GlobalFieldModel& m, const FpPoly& num,
                                       const FpPoly& den);
  static FactoredElement from_fraction_q(const Int& num, const Int& den);
};

struct SquareClass {
  FactoredElement element;
  long n = 2;  // modulus

  // canonical form: exponents reduced into [0, n), zero exponents dropped
  SquareClass canonical() const;
};

struct SymbolClass {
  FactoredElement a, b;
  long n = 2;
};

// value in the residue-class group F_q^x / (F_q^x)^n at a place, via a
// discrete log in the (small) residue field
struct ResidueClassValue {
  long index = 0;     // in [0, modulus)
  long modulus = 1;   // gcd(n, q - 1)
  bool trivial() const { return modulus == 1 || index == 0; }
};

// ord_v(f) mod n; requires the residue characteristic coprime to n
long residue_deg1(const SquareClass& f, const Place& v);

// class of (-1)^{ord(a) ord(b)} a^{ord(b)} b^{-ord(a)} in the residue field
// modulo n-th powers
ResidueClassValue residue_deg2_tame(const SymbolClass& s, const Place& v);

// all square classes with representatives of total degree <= degree_bound
// whose degree-1 residues vanish at every geometric place of P^1 outside
// `removed`; over the full geometric place set this returns the constant
// classes only
std::vector<SquareClass> unramified_h1(const GlobalFieldModel& model,
                                       const std::vector<Place>& removed, long n,
                                       int degree_bound);

struct SymbolCheck {
  bool unramified = false;
  std::vector<Place> ramified_at;
  bool twist_flag = false;  // set when n > 2 (untwisted coefficients used)
};
SymbolCheck unramified_symbol_check(const SymbolClass& s, const std::vector<Place>& removed);

}  // namespace torlat
