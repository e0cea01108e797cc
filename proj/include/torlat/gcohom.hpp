#pragma once

#include <string>
#include <vector>

#include "torlat/errors.hpp"
#include "torlat/glattice.hpp"

// Cohomology of finite groups with coefficients in finitely generated
// modules, computed from the inhomogeneous bar resolution. Degree-i cochains
// are functions G^i -> M stored as integer vectors of length |G|^i * w
// (tuple-major, module coordinates within a tuple), with the module's
// torsion relations repeated per tuple. Mixed free/torsion coefficients are
// handled by augmenting boundary matrices with the relation columns before
// the kernel and Smith reductions.

namespace torlat {

struct CohomologyOptions {
  // guard on |G|^degree * module width
  unsigned long budget = 4096;
};

struct CohomologyGroup {
  GLattice module;
  int degree = 0;
  AbelianGroupShape shape;
  QuotientPresentation pres;  // cocycle lattice / (coboundaries + relations)

  index_t cochain_len() const;
  // tuple indexing: (g_1..g_i) -> g_1 n^{i-1} + ... + g_i
  index_t tuple_index(const std::vector<int>& tuple) const;

  const IntMat& representatives() const { return pres.generators; }
  std::vector<Int> slot_moduli() const;  // invariant factor per slot, 0 = free

  bool is_cocycle(const IntVec& x) const;
  // class coordinates (torsion slots reduced into [0, d)); throws when x is
  // not a cocycle vector
  IntVec class_coords(const IntVec& x) const;
  bool is_coboundary(const IntVec& x) const;
  IntVec representative_of(const IntVec& coords) const;
};

CohomologyGroup cohomology(const GLattice& m, int degree, const CohomologyOptions& opt = {});

// (d phi)(g_1..g_{i+1}) = g_1 phi(g_2..) + sum (-1)^j phi(.., g_j g_{j+1}, ..)
//                         + (-1)^{i+1} phi(g_1..g_i)
IntVec apply_bar_boundary(const GLattice& m, int degree, const IntVec& phi);
SparseIntMat bar_boundary_sparse(const GLattice& m, int degree);

// A homomorphism between two computed cohomology groups, as a matrix on
// class coordinates.
struct CohMap {
  AbelianGroupShape domain;
  AbelianGroupShape codomain;
  std::vector<Int> domain_moduli;    // per domain slot, 0 = free
  std::vector<Int> codomain_moduli;  // per codomain slot
  IntMat matrix;                     // codomain slots x domain slots

  IntVec apply(const IntVec& coords) const;  // reduced mod codomain moduli
  bool is_zero_map() const;
};

// Kernel of a CohMap as a subgroup of the domain: shape plus generators in
// domain class coordinates.
struct KernelSubgroup {
  AbelianGroupShape shape;
  IntMat generators;  // domain slots x #gens
};
KernelSubgroup cohmap_kernel(const CohMap& f);

struct SubgroupRestriction {
  Subgroup subgroup;
  CohomologyGroup sub;
  CohMap map;
};
SubgroupRestriction restriction_map(const CohomologyGroup& amb, const Subgroup& h,
                                    const CohomologyOptions& opt = {});

struct InflationResult {
  CohomologyGroup quotient_side;  // H^i(G/N, M^N)
  CohMap map;                     // into the ambient H^i(G, M)
};
InflationResult inflation_map(const CohomologyGroup& amb, const Subgroup& normal,
                              const CohomologyOptions& opt = {});

// Short exact sequence 0 -> A --f--> B --g--> C -> 0 of modules over one
// group; validated on construction of the connecting map.
struct GLatticeSES {
  GLattice a, b, c;
  IntMat f;  // w_B x w_A
  IntMat g;  // w_C x w_B
};
// Throws std::invalid_argument naming the failing position.
void validate_ses(const GLatticeSES& s);

struct ConnectingResult {
  CohomologyGroup hc;  // H^i(G, C)
  CohomologyGroup ha;  // H^{i+1}(G, A)
  CohMap delta;
};
ConnectingResult connecting_hom(const GLatticeSES& s, int degree,
                                const CohomologyOptions& opt = {});

// Map induced by an equivariant module map f: M -> M' (w' x w).
CohMap induced_map(const CohomologyGroup& from, const CohomologyGroup& to, const IntMat& f);

// Induced module Z[G] (x)_{Z[H]} M for a subgroup H and an H-module M.
GLattice induced_module(const GroupTable& g, const Subgroup& h, const GLattice& m_over_h);

struct ShapiroResult {
  GLattice induced;
  CohomologyGroup g_side;  // H^i(G, Ind M)
  CohomologyGroup h_side;  // H^i(H, M)
  CohMap iso;              // g_side -> h_side
  CohMap iso_inverse;      // h_side -> g_side
};
ShapiroResult shapiro(const GroupTable& g, const Subgroup& h, const GLattice& m_over_h,
                      int degree, const CohomologyOptions& opt = {});

// Lattice-level Tate-Shafarevich kernel: classes killed by restriction to
// every subgroup in the family.
struct ShaLatticeResult {
  AbelianGroupShape kernel;
  IntMat class_coords;     // ambient slots x #gens
  IntMat representatives;  // cochain vectors, one column per generator
  std::vector<Subgroup> family;
};
ShaLatticeResult sha_lattice(const CohomologyGroup& amb, const std::vector<Subgroup>& family,
                             const CohomologyOptions& opt = {});

// small (as a subgroup of the ambient cohomology) contained in big?
bool sha_kernel_contains(const CohomologyGroup& amb, const ShaLatticeResult& big,
                         const ShaLatticeResult& small);

}  // namespace torlat
