#pragma once

#include <stdexcept>

#include "torlat/glattice.hpp"

// Test-side oracle: cohomology of a cyclic group from the classical two-term
// periodic resolution. H^0 = M^sigma, H^odd = ker(Norm)/im(sigma - 1),
// H^even = M^sigma / Norm(M). Deliberately independent of the bar-resolution
// path in the library: only the shared integer-lattice kernel/quotient
// primitives are reused.

namespace torlat::testing {

inline int cyclic_generator(const GroupTable& g) {
  for (int x = 0; x < g.n; ++x)
    if (g.order_of(x) == g.n) return x;
  throw std::invalid_argument("cyclic_generator: group is not cyclic");
}

// generating columns of {x in Z^w : phi x in relations}
inline IntMat endo_kernel_gens(const GLattice& m, const IntMat& phi) {
  const index_t w = m.width();
  IntMat rel = m.relation_columns();
  IntMat stacked = hcat(phi, rel);
  return kernel_basis(stacked).topRows(w);
}

inline AbelianGroupShape cyclic_cohomology_oracle(const GLattice& m, int degree) {
  const int n = m.group.n;
  const index_t w = m.width();
  const int gen = cyclic_generator(m.group);
  const IntMat& a = m.act(gen);
  IntMat norm = int_zero(w, w);
  IntMat p = int_identity(w);
  for (int k = 0; k < n; ++k) {
    norm += p;
    p = a * p;
  }
  IntMat amin1 = a - int_identity(w);
  IntMat rel = m.relation_columns();
  if (degree == 0) {
    IntMat fixed = endo_kernel_gens(m, amin1);
    return lattice_quotient(hcat(fixed, rel), rel).shape;
  }
  if (degree % 2 == 1) {
    IntMat num = endo_kernel_gens(m, norm);
    IntMat den = hcat(amin1, rel);
    return lattice_quotient(hcat(num, den), den).shape;
  }
  IntMat num = endo_kernel_gens(m, amin1);
  IntMat den = hcat(norm, rel);
  return lattice_quotient(hcat(num, den), den).shape;
}

}  // namespace torlat::testing
