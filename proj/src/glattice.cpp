#include "torlat/glattice.hpp"

#include <map>
#include <stdexcept>

namespace torlat {

IntMat GLattice::relation_columns() const {
  const index_t t = static_cast<index_t>(torsion.size());
  IntMat r = int_zero(width(), t);
  for (index_t s = 0; s < t; ++s) r(free_rank + s, s) = torsion[static_cast<size_t>(s)];
  return r;
}

bool GLattice::vec_in_relations(const IntVec& v) const {
  for (index_t i = 0; i < free_rank; ++i)
    if (v(i) != 0) return false;
  for (size_t s = 0; s < torsion.size(); ++s)
    if (!mpz_divisible_p(v(free_rank + static_cast<index_t>(s)).get_mpz_t(),
                         torsion[s].get_mpz_t()))
      return false;
  return true;
}

bool GLattice::maps_equal(const IntMat& a, const IntMat& b) const {
  if (a.rows() != width() || b.rows() != width() || a.cols() != b.cols()) return false;
  for (index_t j = 0; j < a.cols(); ++j) {
    IntVec diff = a.col(j) - b.col(j);
    if (!vec_in_relations(diff)) return false;
  }
  return true;
}

IntVec GLattice::reduce_vec(IntVec v) const {
  for (size_t s = 0; s < torsion.size(); ++s) {
    Int& e = v(free_rank + static_cast<index_t>(s));
    mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), torsion[s].get_mpz_t());
  }
  return v;
}

void GLattice::validate() const {
  const index_t w = width();
  if (free_rank < 0) throw std::invalid_argument("GLattice: negative rank");
  for (const auto& m : torsion)
    if (m < 2) throw std::invalid_argument("GLattice: torsion modulus < 2");
  if (action.size() != static_cast<size_t>(group.n))
    throw std::invalid_argument("GLattice: one action matrix per group element required");
  for (const auto& a : action) {
    if (a.rows() != w || a.cols() != w)
      throw std::invalid_argument("GLattice: action matrix has wrong dimensions");
    // torsion compatibility: column of torsion type s scaled by m_s must lie
    // in the relation lattice
    for (size_t s = 0; s < torsion.size(); ++s) {
      IntVec col = a.col(free_rank + static_cast<index_t>(s)) * torsion[s];
      if (!vec_in_relations(col))
        throw std::invalid_argument("GLattice: action does not respect torsion moduli");
    }
  }
  if (!maps_equal(act(group.identity), int_identity(w)))
    throw std::invalid_argument("GLattice: identity does not act as identity");
  for (int g = 0; g < group.n; ++g)
    for (int h = 0; h < group.n; ++h)
      if (!maps_equal(act(g) * act(h), act(group.mul(g, h))))
        throw std::invalid_argument("GLattice: action is not a homomorphism");
}

GLattice GLattice::trivial(const GroupTable& g, index_t rank) {
  GLattice m;
  m.group = g;
  m.free_rank = rank;
  m.action.assign(static_cast<size_t>(g.n), int_identity(rank));
  m.validate();
  return m;
}

GLattice GLattice::from_action(GroupTable g, std::vector<IntMat> per_element, index_t free_rank,
                               std::vector<Int> torsion) {
  GLattice m;
  m.group = std::move(g);
  m.free_rank = free_rank;
  m.torsion = std::move(torsion);
  m.action = std::move(per_element);
  m.validate();
  return m;
}

GLattice GLattice::from_generator_action(const GroupTable& g, const std::vector<int>& gens,
                                         const std::vector<IntMat>& mats, index_t free_rank,
                                         std::vector<Int> torsion) {
  if (gens.size() != mats.size())
    throw std::invalid_argument("from_generator_action: generator/matrix count mismatch");
  const index_t w = free_rank + static_cast<index_t>(torsion.size());
  std::vector<IntMat> per(static_cast<size_t>(g.n));
  std::vector<char> known(static_cast<size_t>(g.n), 0);
  per[static_cast<size_t>(g.identity)] = int_identity(w);
  known[static_cast<size_t>(g.identity)] = 1;
  std::vector<int> queue{g.identity};
  for (size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    for (size_t k = 0; k < gens.size(); ++k) {
      int y = g.mul(gens[k], x);
      IntMat m = mats[k] * per[static_cast<size_t>(x)];
      if (!known[static_cast<size_t>(y)]) {
        per[static_cast<size_t>(y)] = std::move(m);
        known[static_cast<size_t>(y)] = 1;
        queue.push_back(y);
      }
    }
  }
  for (int x = 0; x < g.n; ++x)
    if (!known[static_cast<size_t>(x)])
      throw std::invalid_argument("from_generator_action: generators do not generate the group");
  return from_action(g, std::move(per), free_rank, std::move(torsion));
}

GLattice GLattice::regular(const GroupTable& g) {
  const int n = g.n;
  std::vector<IntMat> per;
  per.reserve(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    IntMat m = int_zero(n, n);
    for (int y = 0; y < n; ++y) m(g.mul(x, y), y) = 1;
    per.push_back(std::move(m));
  }
  return from_action(g, std::move(per), n, {});
}

GLattice GLattice::permutation_cosets(const GroupTable& g, const Subgroup& h) {
  if (!is_subgroup(g, h)) throw std::invalid_argument("permutation_cosets: not a subgroup");
  // left cosets xH; identity coset first
  std::vector<int> coset_of(static_cast<size_t>(g.n), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.n; ++x) {
    if (coset_of[static_cast<size_t>(x)] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int a : h) coset_of[static_cast<size_t>(g.mul(x, a))] = c;
  }
  const int k = static_cast<int>(reps.size());
  std::vector<IntMat> per;
  for (int x = 0; x < g.n; ++x) {
    IntMat m = int_zero(k, k);
    for (int c = 0; c < k; ++c)
      m(coset_of[static_cast<size_t>(g.mul(x, reps[static_cast<size_t>(c)]))], c) = 1;
    per.push_back(std::move(m));
  }
  return from_action(g, std::move(per), k, {});
}

GLattice GLattice::augmentation_ideal(const GroupTable& g) {
  // basis: e_x - e_identity for x != identity, in element order
  const int n = g.n;
  if (n == 1) return trivial(g, 0);
  std::vector<int> nonid;
  for (int x = 0; x < n; ++x)
    if (x != g.identity) nonid.push_back(x);
  std::map<int, int> pos;
  for (size_t i = 0; i < nonid.size(); ++i) pos[nonid[i]] = static_cast<int>(i);
  auto coeff_of = [&](int elem, IntVec& v, const Int& c) {
    // e_elem = (e_elem - e_id) + e_id; augmentation-zero combos drop e_id
    if (elem != g.identity) v(pos.at(elem)) += c;
  };
  std::vector<IntMat> per;
  for (int x = 0; x < n; ++x) {
    IntMat m = int_zero(n - 1, n - 1);
    for (size_t j = 0; j < nonid.size(); ++j) {
      // x * (e_{nonid[j]} - e_id) = e_{x nonid[j]} - e_x
      IntVec v = IntVec::Zero(n - 1);
      coeff_of(g.mul(x, nonid[static_cast<size_t>(j)]), v, 1);
      coeff_of(g.mul(x, g.identity), v, -1);
      m.col(static_cast<index_t>(j)) = v;
    }
    per.push_back(std::move(m));
  }
  return from_action(g, std::move(per), n - 1, {});
}

GLattice GLattice::coset_quotient_by_trivial(const GroupTable& g, const Subgroup& h) {
  GLattice perm = permutation_cosets(g, h);
  const index_t k = perm.free_rank;
  if (k == 1) return trivial(g, 0);
  // quotient Z^k / Z(1,..,1): basis = images of e_1..e_{k-1}; e_0 = -(e_1+...+e_{k-1})
  std::vector<IntMat> per;
  for (int x = 0; x < g.n; ++x) {
    IntMat m = int_zero(k - 1, k - 1);
    for (index_t j = 1; j < k; ++j) {
      // image of e_j under the permutation action, then reduce e_0
      IntVec big = perm.act(x).col(j);
      IntVec v = IntVec::Zero(k - 1);
      for (index_t i = 1; i < k; ++i) v(i - 1) = big(i);
      if (big(0) != 0)
        for (index_t i = 0; i < k - 1; ++i) v(i) -= big(0);
      m.col(j - 1) = v;
    }
    per.push_back(std::move(m));
  }
  return from_action(g, std::move(per), k - 1, {});
}

GLattice GLattice::direct_sum(const GLattice& a, const GLattice& b) {
  if (!a.group.same_table(b.group))
    throw std::invalid_argument("direct_sum: summands over different groups");
  GLattice m;
  m.group = a.group;
  m.free_rank = a.free_rank + b.free_rank;
  m.torsion = a.torsion;
  m.torsion.insert(m.torsion.end(), b.torsion.begin(), b.torsion.end());
  const index_t ta = static_cast<index_t>(a.torsion.size());
  const index_t tb = static_cast<index_t>(b.torsion.size());
  const index_t w = m.width();
  // coordinate embedding: [free_a | free_b | tors_a | tors_b]
  auto embed_a = [&](index_t i) { return i < a.free_rank ? i : m.free_rank + (i - a.free_rank); };
  auto embed_b = [&](index_t i) {
    return i < b.free_rank ? a.free_rank + i : m.free_rank + ta + (i - b.free_rank);
  };
  (void)tb;
  for (int x = 0; x < m.group.n; ++x) {
    IntMat mat = int_zero(w, w);
    for (index_t i = 0; i < a.width(); ++i)
      for (index_t j = 0; j < a.width(); ++j)
        if (a.act(x)(i, j) != 0) mat(embed_a(i), embed_a(j)) = a.act(x)(i, j);
    for (index_t i = 0; i < b.width(); ++i)
      for (index_t j = 0; j < b.width(); ++j)
        if (b.act(x)(i, j) != 0) mat(embed_b(i), embed_b(j)) = b.act(x)(i, j);
    m.action.push_back(std::move(mat));
  }
  m.validate();
  return m;
}

GLattice GLattice::dual() const {
  if (!torsion.empty()) throw std::invalid_argument("dual: module has torsion");
  GLattice m;
  m.group = group;
  m.free_rank = free_rank;
  for (int x = 0; x < group.n; ++x) m.action.push_back(act(group.inv(x)).transpose());
  m.validate();
  return m;
}

GLattice GLattice::tensor_mod(const Int& n) const {
  if (!torsion.empty()) throw std::invalid_argument("tensor_mod: module has torsion");
  if (n < 2) throw std::invalid_argument("tensor_mod: modulus must be >= 2");
  GLattice m;
  m.group = group;
  m.free_rank = 0;
  m.torsion.assign(static_cast<size_t>(free_rank), n);
  m.action = action;
  m.validate();
  return m;
}

GLattice GLattice::restrict_to(const Subgroup& h) const {
  GroupTable sub = subgroup_table(group, h);
  std::vector<IntMat> per;
  per.reserve(h.size());
  for (int idx : h) per.push_back(act(idx));
  return from_action(sub, std::move(per), free_rank, torsion);
}

GLattice GLattice::fixed_module(const Subgroup& nsub, const QuotientData& q,
                                IntMat* basis_out) const {
  // lattice {x : (A_g - I) x in relations, g in N} as a module over G/N
  const index_t w = width();
  SparseIntMat stack;
  const index_t t = static_cast<index_t>(torsion.size());
  stack.rows = static_cast<index_t>(nsub.size()) * w;
  stack.cols.resize(static_cast<size_t>(w + static_cast<index_t>(nsub.size()) * t));
  for (size_t b = 0; b < nsub.size(); ++b) {
    const IntMat& a = act(nsub[b]);
    const index_t row0 = static_cast<index_t>(b) * w;
    for (index_t i = 0; i < w; ++i)
      for (index_t j = 0; j < w; ++j) {
        Int v = a(i, j) - ((i == j) ? 1 : 0);
        if (v != 0) stack.add_entry(j, row0 + i, v);
      }
    for (index_t s = 0; s < t; ++s)
      stack.add_entry(w + static_cast<index_t>(b) * t + s, row0 + free_rank + s,
                      torsion[static_cast<size_t>(s)]);
  }
  stack.finalize();
  IntMat ker = kernel_basis(stack);
  IntMat gens = ker.topRows(w);
  // append relation columns so the span contains the full preimage of M^N
  IntMat rel = relation_columns();
  IntMat all = hcat(gens, rel);
  ColumnBasis cb = column_lattice_basis(all);
  const IntMat& basis = cb.basis;  // w x k
  if (basis_out) *basis_out = basis;
  // induced action of G/N on the basis: solve basis * y = act(rep) * basis
  std::vector<IntMat> per;
  for (int c = 0; c < q.quotient.n; ++c) {
    IntMat moved = act(q.coset_rep[static_cast<size_t>(c)]) * basis;
    auto y = solve_columns(basis, moved);
    if (!y) throw std::logic_error("fixed_module: action does not preserve the fixed lattice");
    per.push_back(*y);
  }
  // torsion of the fixed module: basis columns may hit torsion coordinates;
  // present the fixed module abstractly as basis-coordinates modulo the
  // relations expressed in the basis
  auto relcoords = solve_columns(basis, rel);
  if (!relcoords) throw std::logic_error("fixed_module: relations not in fixed lattice");
  // normalize: Smith form of relcoords gives the presentation; to keep one
  // code path, diagonalize and change basis so relations are diagonal
  SmithDecomposition s = smith_normal_form(*relcoords);
  // new basis = basis * Uinv, relations become diagonal D
  IntMat uinv = unimodular_inverse(s.U);
  IntMat nb = basis * uinv;
  std::vector<Int> diag = s.diagonal();
  // columns with d = 1 are killed; d = 0 free; d > 1 torsion. Reorder new
  // basis: free columns first, then torsion, dropping killed ones.
  std::vector<index_t> free_cols, tors_cols;
  std::vector<Int> tors_mod;
  for (index_t j = 0; j < nb.cols(); ++j) {
    Int d = j < static_cast<index_t>(diag.size()) ? abs(diag[static_cast<size_t>(j)]) : Int(0);
    if (d == 0)
      free_cols.push_back(j);
    else if (d != 1) {
      tors_cols.push_back(j);
      tors_mod.push_back(d);
    }
  }
  std::vector<index_t> order;
  order.insert(order.end(), free_cols.begin(), free_cols.end());
  order.insert(order.end(), tors_cols.begin(), tors_cols.end());
  IntMat finalb(w, static_cast<index_t>(order.size()));
  for (size_t j = 0; j < order.size(); ++j) finalb.col(static_cast<index_t>(j)) = nb.col(order[j]);
  if (basis_out) *basis_out = finalb;
  // rewrite the action in the final basis coordinates (solve through the
  // original basis, then change coordinates)
  std::vector<IntMat> per_final;
  for (int c = 0; c < q.quotient.n; ++c) {
    IntMat moved = act(q.coset_rep[static_cast<size_t>(c)]) * finalb;
    // express in nb coordinates: nb * z = moved has solutions modulo killed
    // columns; solve against [finalb | killed-relation directions]
    IntMat aug = hcat(finalb, rel);
    auto z = solve_columns(aug, moved);
    if (!z) throw std::logic_error("fixed_module: induced action failed");
    per_final.push_back(z->topRows(static_cast<index_t>(order.size())));
  }
  GLattice out;
  out.group = q.quotient;
  out.free_rank = static_cast<index_t>(free_cols.size());
  out.torsion = tors_mod;
  out.action = std::move(per_final);
  out.validate();
  return out;
}

}  // namespace torlat
