#pragma once

#include <optional>
#include <string>
#include <vector>

// Finite groups as explicit multiplication tables, plus the subgroup and
// homomorphism utilities the cohomology and classification layers need.
// All tables are validated on construction (identity, inverses,
// associativity checked exhaustively; these groups are desk-scale).

namespace torlat {

struct GroupTable {
  int n = 1;
  std::vector<std::vector<int>> table;  // table[g][h] = g * h
  int identity = 0;
  std::vector<int> inverse;

  int mul(int g, int h) const { return table[static_cast<size_t>(g)][static_cast<size_t>(h)]; }
  int inv(int g) const { return inverse[static_cast<size_t>(g)]; }
  int order_of(int g) const;
  std::vector<int> element_orders() const;
  bool is_abelian() const;
  bool same_table(const GroupTable& o) const { return n == o.n && table == o.table; }

  static GroupTable from_table(std::vector<std::vector<int>> t);
  static GroupTable trivial();
  static GroupTable cyclic(int m);
  static GroupTable direct_product(const GroupTable& a, const GroupTable& b);
  // Closure of permutations of {0..deg-1}; element 0 is the identity.
  static GroupTable from_permutations(int deg, const std::vector<std::vector<int>>& gens);
  static GroupTable dihedral(int m);  // order 2m, m >= 1
  static GroupTable quaternion8();
  static GroupTable alternating4();
  static GroupTable dicyclic3();  // order 12
};

// Subgroups are strictly increasing lists of element indices.
using Subgroup = std::vector<int>;

bool is_subgroup(const GroupTable& g, const Subgroup& h);
Subgroup subgroup_closure(const GroupTable& g, const std::vector<int>& gens);
std::vector<Subgroup> all_subgroups(const GroupTable& g);
std::vector<Subgroup> cyclic_subgroups(const GroupTable& g);  // includes the trivial one
bool is_normal(const GroupTable& g, const Subgroup& h);
Subgroup full_subgroup(const GroupTable& g);

// Multiplication table of a subgroup, with local indices following h.
GroupTable subgroup_table(const GroupTable& g, const Subgroup& h);

// Quotient by a normal subgroup: table on cosets plus the projection map.
struct QuotientData {
  GroupTable quotient;
  std::vector<int> projection;  // g -> coset index
  std::vector<int> coset_rep;   // coset index -> representative element
};
QuotientData quotient_by_normal(const GroupTable& g, const Subgroup& n);

// Greedy minimal generating set (smallest indices first).
std::vector<int> generating_set(const GroupTable& g);

// All homomorphisms determined by images of `gens` within the candidate list;
// each result is the full map g -> image index into `candidates` domain...
// Returned as full element maps g -> value, where values are opaque ints
// produced by the `mul`/`eq` callbacks of the target description.
struct TargetGroup {
  int size;
  std::vector<std::vector<int>> table;
  int identity;
};

// All homomorphisms G -> T (T given by table), as full maps.
std::vector<std::vector<int>> all_homomorphisms(const GroupTable& g, const TargetGroup& t);
// All isomorphisms G -> T; empty when not isomorphic.
std::vector<std::vector<int>> all_isomorphisms(const GroupTable& g, const TargetGroup& t);

// Abstract isomorphism label for |G| <= 12 (C1..C12, V4, S3, D4, Q8, C2xC4,
// C2x3, D5, D6, A4, Dic3, C2xC6, C3xC3); falls back to "G<n>".
std::string iso_label(const GroupTable& g);

}  // namespace torlat
