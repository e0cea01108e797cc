#pragma once

#include <string>
#include <vector>

#include "torlat/gcohom.hpp"
#include "torlat/glzfin.hpp"

// Algebraic tori presented as integral representations of a finite splitting
// group on the character lattice X(T). The descriptor stores X(T); the
// cocharacter action is the inverse-transpose, derived on demand.

namespace torlat {

struct TorusDescriptor {
  GroupTable splitting_group;
  GLattice char_action;  // X(T); torsion-free
  std::string provenance;

  index_t dimension() const { return char_action.free_rank; }
  GLattice cocharacter_action() const { return char_action.dual(); }
  Subgroup action_kernel() const;
  bool faithful_on_quotient() const { return true; }  // by definition of the kernel
};

TorusDescriptor make_split_torus(const GroupTable& g, index_t d);
// R_{L^H/K}(G_m): permutation lattice on G/H.
TorusDescriptor make_restriction_torus(const GroupTable& g, const Subgroup& h);
// R^(1)_{L^H/K}(G_m): character lattice Z[G/H]/Z, cocharacters the
// augmentation kernel.
TorusDescriptor make_norm_one_torus(const GroupTable& g, const Subgroup& h);
TorusDescriptor make_product_torus(const TorusDescriptor& a, const TorusDescriptor& b);
TorusDescriptor make_dual_torus(const TorusDescriptor& t);
// T[n] as a module: X_*(T) (x) Z/n. Requires n >= 2.
GLattice torsion_module(const TorusDescriptor& t, const Int& n);

// true iff every inertia element acts as the identity on X(T)
bool good_reduction_at(const TorusDescriptor& t, const Subgroup& inertia);

TorusDescriptor with_provenance(TorusDescriptor t, std::string p);

struct TorusIsomorphism {
  ConjugacyStatus status = ConjugacyStatus::Inconclusive;
  IntMat conjugator;  // X with X rho1(g) = rho2(g) X for all g, when Found
  std::string certificate;
};
// K-isomorphism = simultaneous GL_d(Z) conjugacy of the two character
// actions over the same splitting group (no twisting by automorphisms).
TorusIsomorphism tori_isomorphic(const TorusDescriptor& t1, const TorusDescriptor& t2,
                                 unsigned long search_bound = 5);

// All homomorphisms G -> GL_d(Z) killing every listed inertia subgroup, up to
// simultaneous conjugacy; d <= 2.
std::vector<TorusDescriptor> enumerate_good_reduction_tori(
    const GroupTable& g, const std::vector<Subgroup>& inertia_data, index_t d);

}  // namespace torlat
