#pragma once

#include <vector>

#include "torlat/groups.hpp"
#include "torlat/zlattice.hpp"

// A finite group acting on a finitely generated abelian group
// Z^free_rank + Z/m_1 + ... + Z/m_t, presented as Z^w modulo the relation
// lattice spanned by m_s * e_{free_rank + s}. Coordinates are ordered free
// part first, torsion part last. Action matrices are integer matrices on the
// presentation; well-definedness and the homomorphism property are verified
// exhaustively on construction.

namespace torlat {

struct GLattice {
  GroupTable group;
  index_t free_rank = 0;
  std::vector<Int> torsion;      // moduli, each >= 2
  std::vector<IntMat> action;    // one w x w matrix per group element

  index_t width() const { return free_rank + static_cast<index_t>(torsion.size()); }
  const IntMat& act(int g) const { return action[static_cast<size_t>(g)]; }

  // Columns m_s e_{free_rank+s}; w x t.
  IntMat relation_columns() const;
  // Vector congruence modulo the relation lattice.
  bool vec_in_relations(const IntVec& v) const;
  bool maps_equal(const IntMat& a, const IntMat& b) const;
  // Reduces torsion coordinates into [0, m_s).
  IntVec reduce_vec(IntVec v) const;

  void validate() const;  // throws std::invalid_argument with the reason

  static GLattice trivial(const GroupTable& g, index_t rank);
  static GLattice from_action(GroupTable g, std::vector<IntMat> per_element,
                              index_t free_rank, std::vector<Int> torsion);
  // Action given on a generating set; extended to all elements by words.
  static GLattice from_generator_action(const GroupTable& g, const std::vector<int>& gens,
                                        const std::vector<IntMat>& mats, index_t free_rank,
                                        std::vector<Int> torsion);
  static GLattice regular(const GroupTable& g);                       // Z[G]
  static GLattice permutation_cosets(const GroupTable& g, const Subgroup& h);  // Z[G/H]
  static GLattice augmentation_ideal(const GroupTable& g);            // I_G in Z[G]
  // Z[G/H] / Z(sum of cosets): the character lattice of a norm-one torus.
  static GLattice coset_quotient_by_trivial(const GroupTable& g, const Subgroup& h);
  static GLattice direct_sum(const GLattice& a, const GLattice& b);

  GLattice dual() const;                 // inverse-transpose; torsion must be empty
  GLattice tensor_mod(const Int& n) const;  // M (x) Z/n for free M
  // Restriction along a subgroup (local indices follow `h`).
  GLattice restrict_to(const Subgroup& h) const;
  // Fixed-point lattice M^N for a normal subgroup, as a module over G/N.
  GLattice fixed_module(const Subgroup& n, const QuotientData& q, IntMat* basis_out) const;
};

}  // namespace torlat
