#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torlat/fppoly.hpp"
#include "torlat/groups.hpp"

// Explicit global-field models (Q and F_p(t)) with their place sets, exact
// support computations, and abelian splitting data with computable Frobenius
// and inertia at every place: multiquadratic extensions over Q,
// Artin-Schreier and Kummer extensions over F_p(t).

namespace torlat {

struct GlobalFieldModel {
  enum class Kind { Rationals, RationalFunctionField };
  Kind kind = Kind::Rationals;
  long p = 0;  // coefficient field size for function fields

  static GlobalFieldModel rationals() { return {Kind::Rationals, 0}; }
  static GlobalFieldModel fp_t(long p);
  bool operator==(const GlobalFieldModel& o) const { return kind == o.kind && p == o.p; }
  std::string to_string() const;
};

struct Place {
  enum class Kind { RationalPrime, FinitePoly, Infinity };
  Kind kind = Kind::RationalPrime;
  Int prime;    // RationalPrime
  FpPoly poly;  // FinitePoly: monic irreducible

  static Place rational_prime(Int q);
  static Place finite_poly(FpPoly f);  // verifies irreducibility and monic
  static Place infinity();

  int degree() const;  // residue degree (1 for rational primes and infinity)
  std::string to_string() const;
  bool operator==(const Place& o) const;
  bool operator<(const Place& o) const;
};

// exact factorizations of rational integers (trial division; desk scale)
std::vector<std::pair<Int, int>> factor_int(const Int& n);  // n != 0, sign dropped
Int squarefree_part(const Int& n);                          // signed
Int fundamental_discriminant(const Int& d);                 // of Q(sqrt(d)), d not a square

// support of a nonzero element given as a fraction
std::vector<Place> support(const GlobalFieldModel& model, const Int& num, const Int& den);
std::vector<Place> support(const GlobalFieldModel& model, const FpPoly& num, const FpPoly& den);
long ord_at(const GlobalFieldModel& model, const FpPoly& num, const FpPoly& den, const Place& v);
long ord_at_q(const Int& num, const Int& den, const Int& q);

// all places with a small height: primes <= bound, monic irreducibles of
// degree <= bound (affine only; the infinite place is not included)
std::vector<Place> places_up_to(const GlobalFieldModel& model, unsigned long bound);

struct SplittingDatum {
  enum class Kind { Multiquadratic, ArtinSchreier, Kummer };
  GlobalFieldModel model;
  GroupTable group;  // abelian
  Kind kind = Kind::Multiquadratic;

  std::vector<Int> discriminants;  // fundamental discriminants (multiquadratic)
  FpPoly as_element;               // canonical class representative (Artin-Schreier)
  long kummer_n = 0;
  FpPoly kummer_num, kummer_den;

  std::vector<Place> ramified_places;
  std::string describe() const;
};

// ds: any nonsquare integers; converted to fundamental discriminants and
// required to be multiplicatively independent modulo squares.
SplittingDatum make_multiquadratic_datum(const std::vector<Int>& ds);
// a must not lie in the image of the Artin-Schreier operator.
SplittingDatum make_artin_schreier_datum(long p, const FpPoly& a);
// cyclic Kummer datum of degree n | p-1, radicand num/den.
SplittingDatum make_kummer_datum(long p, long n, const FpPoly& num, const FpPoly& den);

// Frobenius element at an unramified place; throws for ramified places.
int frobenius(const SplittingDatum& d, const Place& v);
Subgroup inertia(const SplittingDatum& d, const Place& v);
// full decomposition subgroup (inertia together with a Frobenius lift);
// nullopt when not computable from the datum
std::optional<Subgroup> decomposition_subgroup(const SplittingDatum& d, const Place& v);

struct RealizedCyclics {
  std::vector<std::pair<Subgroup, Place>> realized;  // subgroup with one witness
  bool full_coverage = false;  // every cyclic subgroup of the group appeared
};
RealizedCyclics realized_cyclics(const SplittingDatum& d, unsigned long sample_bound);

}  // namespace torlat
