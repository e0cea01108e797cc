#pragma once

#include <string>
#include <vector>

#include "torlat/places.hpp"
#include "torlat/torus.hpp"

// The positive-characteristic counterexample engine: canonical classes of
// k[t] modulo the Artin-Schreier operator, everywhere-unramified degree-p
// cyclic extensions of F_p(t), and the norm tori they carry.

namespace torlat {

struct ASClass {
  long p = 2;
  FpPoly representative;  // canonical: no term of exponent p*k with k >= 1
  bool operator==(const ASClass& o) const { return p == o.p && representative == o.representative; }
};

struct WpMembership {
  bool member = false;
  FpPoly witness;  // wp(witness) = a when member
};
// Decides a in wp(F_p[t]) by canonical reduction; degree_bound gates the
// stated precondition deg a <= 2 * degree_bound.
WpMembership wp_image_member(long p, const FpPoly& a, int degree_bound);

// all nonzero classes with canonical representative of degree <= max_degree
std::vector<ASClass> enumerate_as_classes(long p, int max_degree);

struct ASCertificate {
  long p = 2;
  FpPoly a;
  std::string defining_polynomial;  // x^p - x - a
  long derivative_constant = 0;     // the constant -1 of d/dx (x^p - x - a)
  bool derivative_is_unit = false;
};
// Throws std::invalid_argument when a lies in the image of wp (no extension).
ASCertificate as_unramified_certificate(long p, const FpPoly& a);

struct ASNormTorus {
  TorusDescriptor torus;   // norm-one torus of the degree-p cyclic extension
  SplittingDatum datum;    // the extension data; unramified at every affine place
  ASCertificate certificate;
};
ASNormTorus as_norm_torus(long p, const FpPoly& a);

}  // namespace torlat
