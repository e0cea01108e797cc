#pragma once

#include <string>
#include <utility>
#include <vector>

#include "torlat/intmat.hpp"

// Dense univariate polynomials over a small prime field F_p, plus the
// residue-field arithmetic (F_p[t]/f) and deterministic factorization by
// trial division against enumerated monic irreducibles. Everything at desk
// scale: p and degrees stay small.

namespace torlat {

struct FpPoly {
  long p = 2;
  std::vector<long> coeffs;  // low-to-high, in [0, p), no trailing zeros

  static FpPoly zero(long p) { return FpPoly{p, {}}; }
  static FpPoly one(long p) { return constant(p, 1); }
  static FpPoly constant(long p, long c);
  static FpPoly variable(long p);  // t
  static FpPoly from_coeffs(long p, std::vector<long> cs);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs.empty(); }
  bool is_constant() const { return coeffs.size() <= 1; }
  long coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs.size())) ? coeffs[static_cast<size_t>(i)] : 0;
  }
  long leading() const { return coeffs.empty() ? 0 : coeffs.back(); }
  bool is_monic() const { return leading() == 1; }
  FpPoly monic_part() const;  // f / leading coefficient
  long eval(long x) const;
  FpPoly derivative() const;
  std::string to_string() const;  // e.g. "t^2+2t+1"

  bool operator==(const FpPoly& o) const { return p == o.p && coeffs == o.coeffs; }
  bool operator!=(const FpPoly& o) const { return !(*this == o); }
  bool operator<(const FpPoly& o) const;  // degree, then lexicographic high-to-low
};

FpPoly fp_add(const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_scale(const FpPoly& a, long c);
std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b);
FpPoly fp_gcd(const FpPoly& a, const FpPoly& b);  // monic
FpPoly fp_pow(const FpPoly& a, unsigned long e);

// residue-field arithmetic mod a monic polynomial f
FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f);
FpPoly fp_powmod(const FpPoly& a, const Int& e, const FpPoly& f);
FpPoly fp_invmod(const FpPoly& a, const FpPoly& f);

long fp_inv_scalar(long a, long p);
bool is_prime_small(long n);
long least_primitive_root(long p);

bool fp_is_irreducible(const FpPoly& f);
// all monic irreducibles of exactly this degree, sorted
const std::vector<FpPoly>& monic_irreducibles(long p, int degree);

struct FpFactorization {
  long p = 2;
  long unit = 1;                               // leading coefficient
  std::vector<std::pair<FpPoly, int>> factors;  // monic irreducible, exponent; sorted
  int total_degree() const;
};
FpFactorization fp_factor(const FpPoly& f);  // f nonzero

// Artin-Schreier operator and canonical coset reduction over F_p.
// wp(g) = g^p - g = g(t^p) - g(t).
FpPoly wp(const FpPoly& g);
// canonical representative of a mod wp(F_p[t]): no term of exponent p*k with
// k >= 1; returns the witness g with a = canonical + wp(g)
struct WpReduction {
  FpPoly canonical;
  FpPoly witness;
};
WpReduction wp_reduce(const FpPoly& a);

}  // namespace torlat
