#pragma once

#include <vector>

#include "torlat/places.hpp"
#include "torlat/zlattice.hpp"

// Picard groups and unit groups of open subsets of P^1 over finite fields,
// class sets of split tori, Condition (T) witnesses, and imaginary-quadratic
// class groups computed from reduced binary quadratic forms.

namespace torlat {

struct OpenCurve {
  long p = 2;
  std::vector<Place> removed;  // distinct places of F_p(t), possibly infinity

  static OpenCurve projective_line(long p) { return {p, {}}; }
  static OpenCurve affine_line(long p) { return {p, {Place::infinity()}}; }
  void validate() const;
};

AbelianGroupShape picard_open_p1(const OpenCurve& curve);

struct UnitGroup {
  Int torsion_order;  // constant-field units
  size_t free_rank = 0;
  std::vector<std::pair<FpPoly, FpPoly>> generators;  // fractions num/den
};
UnitGroup units_open_p1(const OpenCurve& curve);

// Pic(V)^d, the class set of a d-dimensional split torus.
AbelianGroupShape class_set_split_torus(const OpenCurve& curve, index_t d);

struct ConditionTWitness {
  std::vector<Place> extra_removed;  // the finite set S
  AbelianGroupShape before;
  AbelianGroupShape after;  // trivial when verified
  bool verified = false;
};
ConditionTWitness condition_T_split(const OpenCurve& curve, index_t d);

// ---------------------------------------------------------------------------
// binary quadratic forms of negative discriminant

struct QuadForm {
  Int a, b, c;
  bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator<(const QuadForm& o) const;
};

Int form_discriminant(const QuadForm& f);
bool is_reduced(const QuadForm& f);
QuadForm reduce_form(QuadForm f);
QuadForm principal_form(const Int& d);
QuadForm compose_forms(const QuadForm& f, const QuadForm& g);
QuadForm inverse_form(const QuadForm& f);

bool is_fundamental_discriminant(const Int& d);
// primitive reduced forms of discriminant d < 0, sorted
std::vector<QuadForm> reduced_forms(const Int& d);
AbelianGroupShape class_group_imaginary_quadratic(const Int& d);

}  // namespace torlat
