#pragma once

#include <string>
#include <vector>

#include "torlat/errors.hpp"
#include "torlat/groups.hpp"
#include "torlat/zlattice.hpp"

// Finite subgroups of GL_d(Z): closure from generators, the exact conjugacy
// classification in dimension 2, and the Minkowski mod-3 torsion check.

namespace torlat {

struct MatrixGroup {
  index_t dimension = 0;
  std::vector<IntMat> elements;  // canonically sorted, closed, identity present
  std::vector<IntMat> generators;

  size_t order() const { return elements.size(); }
  // Abstract multiplication table on the sorted element list.
  GroupTable table() const;
  int element_index(const IntMat& m) const;  // -1 when absent
};

// Generated group when its order is <= size_bound; throws ExceedsBound
// otherwise, and std::invalid_argument for a non-unimodular generator.
MatrixGroup close_group(const std::vector<IntMat>& generators, size_t size_bound);

struct ConjClass {
  MatrixGroup representative;
  size_t order = 0;
  std::string label;  // abstract isomorphism type
};

struct ConjClassTable {
  index_t dimension = 0;
  std::vector<ConjClass> classes;
};

// The exact classification of finite subgroups of GL_2(Z) up to conjugacy,
// derived from the subgroups of the square-lattice (order 8) and
// hexagonal-lattice (order 12) maximal groups; 13 classes.
// `permute_seed` reorders the internal element lists before enumeration;
// the resulting table must not depend on it.
ConjClassTable enumerate_finite_subgroups_gl2(uint64_t permute_seed = 0);

// Subgroup conjugacy in GL_d(Z): bounded search over isomorphism-compatible
// generator images, with modular subgroup certificates on failure.
ConjugacyResult conjugate_subgroups(const MatrixGroup& h1, const MatrixGroup& h2,
                                    unsigned long coeff_bound = 5,
                                    unsigned long escalated_bound = 10);

// Brute-force subgroup-set conjugacy of the reductions mod m (d = 2 only).
std::optional<bool> subgroups_conjugate_mod_m(const MatrixGroup& h1, const MatrixGroup& h2,
                                              unsigned long m);

enum class MinkowskiCheck { Pass, Violation };

// Verifies the mod-3 torsion-freeness instance for one finite-order matrix:
// pass iff (A = I mod 3 implies A = I). Throws std::invalid_argument for
// infinite-order input.
MinkowskiCheck minkowski_reduction_check(const IntMat& a, unsigned long order_bound = 24);

// The two maximal finite subgroups of GL_2(Z) (square and hexagonal lattice
// symmetries), used by the classification and by tests.
MatrixGroup gl2_square_maximal();
MatrixGroup gl2_hexagonal_maximal();

}  // namespace torlat
