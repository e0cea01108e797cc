#pragma once

#include <string>
#include <vector>

#include "torlat/gcohom.hpp"
#include "torlat/places.hpp"
#include "torlat/torus.hpp"

// Lattice-level Tate-Shafarevich kernels driven by explicit place data:
// local cohomology at good unramified places through the cyclic group of the
// Frobenius, global kernels over the decomposition subgroups realized by a
// place sweep, and the ell-torsion pipeline through a quasi-split embedding.
// All results are lattice-level: cohomology of the finite splitting group
// acting on cocharacters, with decomposition subgroups standing in for the
// completions.

namespace torlat {

// H^1 of the cyclic group generated by the Frobenius at an unramified place
// of good reduction, acting on the cocharacter lattice.
AbelianGroupShape local_h1(const TorusDescriptor& t, const SplittingDatum& datum,
                           const Place& v, const CohomologyOptions& opt = {});

struct ShaReport {
  AbelianGroupShape ambient;  // H^1(G, cocharacters)
  AbelianGroupShape kernel;
  IntMat class_coords;
  IntMat representatives;
  std::vector<std::pair<Subgroup, Place>> family_used;
  std::vector<Place> excluded_places;  // ramified, decomposition data unavailable
  unsigned long sample_bound = 0;
  bool stabilized = false;
};

ShaReport sha1_places(const TorusDescriptor& t, const SplittingDatum& datum,
                      unsigned long sample_bound, const CohomologyOptions& opt = {});

struct Sha2Report {
  AbelianGroupShape degree2_kernel;     // lattice-level degree-2 kernel
  AbelianGroupShape direct_torsion;     // its ell-torsion subgroup
  AbelianGroupShape quasisplit_torsion; // ell-torsion of the quasi-split kernel
  AbelianGroupShape degree1_kernel_t1;  // degree-1 kernel of the quotient torus
  bool containment_verified = false;
  std::string notes;
};

Sha2Report sha2_torsion(const TorusDescriptor& t, const Int& ell, const SplittingDatum& datum,
                        unsigned long sample_bound, const CohomologyOptions& opt = {});

// The quasi-split embedding on cocharacters: 0 -> X_*(T) -> Z[G]^d -> Q -> 0
// with the quotient torsion-free (the embedding m -> (g -> g m) is saturated).
GLatticeSES quasisplit_embedding_ses(const TorusDescriptor& t);

// decomposition subgroups realized by places up to the bound, one witness per
// distinct subgroup, plus the places whose data was not computable
struct PlaceFamily {
  std::vector<std::pair<Subgroup, Place>> members;
  std::vector<Place> excluded;
  std::vector<Subgroup> subgroups() const;
};
PlaceFamily collect_place_family(const SplittingDatum& datum, unsigned long sample_bound);

}  // namespace torlat
