#include "torlat/gcohom.hpp"

#include <algorithm>

namespace torlat {

namespace {

size_t pow_sz(size_t b, int e) {
  size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<int> tuple_digits(size_t idx, int n, int len) {
  std::vector<int> d(static_cast<size_t>(len));
  for (int k = len - 1; k >= 0; --k) {
    d[static_cast<size_t>(k)] = static_cast<int>(idx % static_cast<size_t>(n));
    idx /= static_cast<size_t>(n);
  }
  return d;
}

size_t index_of_digits(const std::vector<int>& d, int n) {
  size_t idx = 0;
  for (int g : d) idx = idx * static_cast<size_t>(n) + static_cast<size_t>(g);
  return idx;
}

// relation columns of C^i: one per (tuple, torsion coordinate)
IntMat cochain_relation_columns(const GLattice& m, int degree) {
  const size_t tuples = pow_sz(static_cast<size_t>(m.group.n), degree);
  const index_t w = m.width();
  const index_t t = static_cast<index_t>(m.torsion.size());
  IntMat r = int_zero(static_cast<index_t>(tuples) * w, static_cast<index_t>(tuples) * t);
  for (size_t tau = 0; tau < tuples; ++tau)
    for (index_t s = 0; s < t; ++s)
      r(static_cast<index_t>(tau) * w + m.free_rank + s, static_cast<index_t>(tau) * t + s) =
          m.torsion[static_cast<size_t>(s)];
  return r;
}

bool cochain_in_relations(const GLattice& m, const IntVec& v) {
  const index_t w = m.width();
  for (index_t tau = 0; tau * w < v.size(); ++tau)
    if (!m.vec_in_relations(v.segment(tau * w, w))) return false;
  return true;
}

}  // namespace

index_t CohomologyGroup::cochain_len() const {
  return static_cast<index_t>(pow_sz(static_cast<size_t>(module.group.n), degree)) *
         module.width();
}

index_t CohomologyGroup::tuple_index(const std::vector<int>& tuple) const {
  return static_cast<index_t>(index_of_digits(tuple, module.group.n));
}

std::vector<Int> CohomologyGroup::slot_moduli() const {
  std::vector<Int> m = shape.invariant_factors;
  m.resize(m.size() + shape.free_rank, Int(0));
  return m;
}

bool CohomologyGroup::is_cocycle(const IntVec& x) const {
  if (x.size() != cochain_len()) return false;
  return cochain_in_relations(module, apply_bar_boundary(module, degree, x));
}

IntVec CohomologyGroup::class_coords(const IntVec& x) const {
  IntVec c = solve_triangular(pres.basis, pres.pivot_rows, x);
  IntVec z = pres.u * c;
  const size_t nslots = pres.slots.size();
  IntVec out(static_cast<index_t>(nslots));
  for (size_t s = 0; s < nslots; ++s) {
    const index_t t = pres.slots[s];
    const Int& d = pres.diag_full[static_cast<size_t>(t)];
    if (d == 0)
      out(static_cast<index_t>(s)) = z(t);
    else
      mpz_fdiv_r(out(static_cast<index_t>(s)).get_mpz_t(), z(t).get_mpz_t(), d.get_mpz_t());
  }
  return out;
}

bool CohomologyGroup::is_coboundary(const IntVec& x) const {
  return mat_is_zero(class_coords(x));
}

IntVec CohomologyGroup::representative_of(const IntVec& coords) const {
  if (pres.generators.cols() == 0) return IntVec::Zero(cochain_len());
  return pres.generators * coords;
}

IntVec apply_bar_boundary(const GLattice& m, int degree, const IntVec& phi) {
  const int n = m.group.n;
  const index_t w = m.width();
  const size_t tuples_out = pow_sz(static_cast<size_t>(n), degree + 1);
  if (phi.size() != static_cast<index_t>(pow_sz(static_cast<size_t>(n), degree)) * w)
    throw std::invalid_argument("apply_bar_boundary: cochain length mismatch");
  IntVec out = IntVec::Zero(static_cast<index_t>(tuples_out) * w);
  for (size_t sigma = 0; sigma < tuples_out; ++sigma) {
    std::vector<int> d = tuple_digits(sigma, n, degree + 1);
    const index_t row0 = static_cast<index_t>(sigma) * w;
    // g_1 . phi(g_2..g_{i+1})
    {
      std::vector<int> face(d.begin() + 1, d.end());
      const index_t col0 = static_cast<index_t>(index_of_digits(face, n)) * w;
      const IntMat& a = m.act(d[0]);
      for (index_t r = 0; r < w; ++r)
        for (index_t c = 0; c < w; ++c)
          if (a(r, c) != 0) out(row0 + r) += a(r, c) * phi(col0 + c);
    }
    // middle faces
    for (int j = 1; j <= degree; ++j) {
      std::vector<int> face;
      face.reserve(static_cast<size_t>(degree));
      for (int k = 0; k < j - 1; ++k) face.push_back(d[static_cast<size_t>(k)]);
      face.push_back(m.group.mul(d[static_cast<size_t>(j - 1)], d[static_cast<size_t>(j)]));
      for (int k = j + 1; k <= degree; ++k) face.push_back(d[static_cast<size_t>(k)]);
      const index_t col0 = static_cast<index_t>(index_of_digits(face, n)) * w;
      const int sign = (j % 2 == 0) ? 1 : -1;
      for (index_t r = 0; r < w; ++r)
        if (sign > 0)
          out(row0 + r) += phi(col0 + r);
        else
          out(row0 + r) -= phi(col0 + r);
    }
    // last face: drop g_{i+1}
    {
      std::vector<int> face(d.begin(), d.end() - 1);
      const index_t col0 = static_cast<index_t>(index_of_digits(face, n)) * w;
      const int sign = ((degree + 1) % 2 == 0) ? 1 : -1;
      for (index_t r = 0; r < w; ++r)
        if (sign > 0)
          out(row0 + r) += phi(col0 + r);
        else
          out(row0 + r) -= phi(col0 + r);
    }
  }
  return out;
}

SparseIntMat bar_boundary_sparse(const GLattice& m, int degree) {
  const int n = m.group.n;
  const index_t w = m.width();
  const size_t tuples_out = pow_sz(static_cast<size_t>(n), degree + 1);
  const size_t tuples_in = pow_sz(static_cast<size_t>(n), degree);
  SparseIntMat s;
  s.rows = static_cast<index_t>(tuples_out) * w;
  s.cols.resize(tuples_in * static_cast<size_t>(w));
  for (size_t sigma = 0; sigma < tuples_out; ++sigma) {
    std::vector<int> d = tuple_digits(sigma, n, degree + 1);
    const index_t row0 = static_cast<index_t>(sigma) * w;
    {
      std::vector<int> face(d.begin() + 1, d.end());
      const index_t col0 = static_cast<index_t>(index_of_digits(face, n)) * w;
      const IntMat& a = m.act(d[0]);
      for (index_t r = 0; r < w; ++r)
        for (index_t c = 0; c < w; ++c)
          if (a(r, c) != 0) s.add_entry(col0 + c, row0 + r, a(r, c));
    }
    for (int j = 1; j <= degree; ++j) {
      std::vector<int> face;
      for (int k = 0; k < j - 1; ++k) face.push_back(d[static_cast<size_t>(k)]);
      face.push_back(m.group.mul(d[static_cast<size_t>(j - 1)], d[static_cast<size_t>(j)]));
      for (int k = j + 1; k <= degree; ++k) face.push_back(d[static_cast<size_t>(k)]);
      const index_t col0 = static_cast<index_t>(index_of_digits(face, n)) * w;
      const Int sign = (j % 2 == 0) ? 1 : -1;
      for (index_t r = 0; r < w; ++r) s.add_entry(col0 + r, row0 + r, sign);
    }
    {
      std::vector<int> face(d.begin(), d.end() - 1);
      const index_t col0 = static_cast<index_t>(index_of_digits(face, n)) * w;
      const Int sign = ((degree + 1) % 2 == 0) ? 1 : -1;
      for (index_t r = 0; r < w; ++r) s.add_entry(col0 + r, row0 + r, sign);
    }
  }
  s.finalize();
  return s;
}

CohomologyGroup cohomology(const GLattice& m, int degree, const CohomologyOptions& opt) {
  if (degree < 0) throw std::invalid_argument("cohomology: negative degree");
  const int n = m.group.n;
  const index_t w = m.width();
  const unsigned long required =
      static_cast<unsigned long>(pow_sz(static_cast<size_t>(n), degree)) *
      static_cast<unsigned long>(w);
  if (required > opt.budget)
    throw BudgetExceeded(required, opt.budget,
                         "cohomology: |G|^i * width exceeds budget (required " +
                             std::to_string(required) + ", budget " +
                             std::to_string(opt.budget) + ")");

  const size_t tuples_in = pow_sz(static_cast<size_t>(n), degree);
  const size_t tuples_out = pow_sz(static_cast<size_t>(n), degree + 1);
  const index_t len_in = static_cast<index_t>(tuples_in) * w;
  const index_t t = static_cast<index_t>(m.torsion.size());

  // cocycle lattice: {x : D_i x in relations of C^{i+1}}
  SparseIntMat stacked = bar_boundary_sparse(m, degree);
  stacked.cols.resize(static_cast<size_t>(len_in) + tuples_out * static_cast<size_t>(t));
  for (size_t tau = 0; tau < tuples_out; ++tau)
    for (index_t s = 0; s < t; ++s)
      stacked.add_entry(len_in + static_cast<index_t>(tau) * t + s,
                        static_cast<index_t>(tau) * w + m.free_rank + s,
                        m.torsion[static_cast<size_t>(s)]);
  stacked.finalize();
  IntMat ker = kernel_basis(stacked);
  IntMat cocycle_gens = ker.topRows(len_in);

  // coboundaries + relations
  IntMat relations = cochain_relation_columns(m, degree);
  IntMat denominators;
  if (degree >= 1) {
    IntMat dprev = bar_boundary_sparse(m, degree - 1).to_dense();
    denominators = hcat(dprev, relations);
  } else {
    denominators = relations;
  }

  CohomologyGroup out;
  out.module = m;
  out.degree = degree;
  out.pres = lattice_quotient(cocycle_gens, denominators);
  out.shape = out.pres.shape;
  return out;
}

IntVec CohMap::apply(const IntVec& coords) const {
  IntVec v = matrix.cols() > 0 ? IntVec(matrix * coords)
                               : IntVec(IntVec::Zero(matrix.rows()));
  for (index_t s = 0; s < v.size(); ++s) {
    const Int& d = codomain_moduli[static_cast<size_t>(s)];
    if (d != 0) mpz_fdiv_r(v(s).get_mpz_t(), v(s).get_mpz_t(), d.get_mpz_t());
  }
  return v;
}

bool CohMap::is_zero_map() const {
  for (index_t j = 0; j < matrix.cols(); ++j) {
    for (index_t i = 0; i < matrix.rows(); ++i) {
      const Int& d = codomain_moduli[static_cast<size_t>(i)];
      if (d == 0) {
        if (matrix(i, j) != 0) return false;
      } else if (!mpz_divisible_p(matrix(i, j).get_mpz_t(), d.get_mpz_t())) {
        return false;
      }
    }
  }
  return true;
}

namespace {

IntMat moduli_columns(const std::vector<Int>& moduli) {
  index_t count = 0;
  for (const auto& d : moduli)
    if (d != 0) ++count;
  IntMat r = int_zero(static_cast<index_t>(moduli.size()), count);
  index_t j = 0;
  for (size_t s = 0; s < moduli.size(); ++s)
    if (moduli[s] != 0) {
      r(static_cast<index_t>(s), j) = moduli[s];
      ++j;
    }
  return r;
}

}  // namespace

KernelSubgroup cohmap_kernel(const CohMap& f) {
  const index_t dom = f.matrix.cols();
  const index_t cod = f.matrix.rows();
  SparseIntMat s;
  s.rows = cod;
  index_t slack = 0;
  for (const auto& d : f.codomain_moduli)
    if (d != 0) ++slack;
  s.cols.resize(static_cast<size_t>(dom + slack));
  for (index_t j = 0; j < dom; ++j)
    for (index_t i = 0; i < cod; ++i)
      if (f.matrix(i, j) != 0) s.add_entry(j, i, f.matrix(i, j));
  index_t sj = dom;
  for (index_t i = 0; i < cod; ++i)
    if (f.codomain_moduli[static_cast<size_t>(i)] != 0)
      s.add_entry(sj++, i, f.codomain_moduli[static_cast<size_t>(i)]);
  s.finalize();
  IntMat ker = kernel_basis(s).topRows(dom);
  IntMat ldom = moduli_columns(f.domain_moduli);
  IntMat all = hcat(ker, ldom);
  QuotientPresentation q = lattice_quotient(all, ldom);
  KernelSubgroup out;
  out.shape = q.shape;
  out.generators = q.generators;
  return out;
}

SubgroupRestriction restriction_map(const CohomologyGroup& amb, const Subgroup& h,
                                    const CohomologyOptions& opt) {
  SubgroupRestriction out;
  out.subgroup = h;
  GLattice subm = amb.module.restrict_to(h);  // validates the subgroup
  out.sub = cohomology(subm, amb.degree, opt);
  const int i = amb.degree;
  const index_t w = amb.module.width();
  const int nh = static_cast<int>(h.size());
  const size_t sub_tuples = pow_sz(static_cast<size_t>(nh), i);
  const index_t sub_len = static_cast<index_t>(sub_tuples) * w;
  const index_t nslots = static_cast<index_t>(amb.pres.slots.size());
  IntMat matrix = int_zero(static_cast<index_t>(out.sub.pres.slots.size()), nslots);
  for (index_t slot = 0; slot < nslots; ++slot) {
    IntVec rep = amb.pres.generators.col(slot);
    IntVec restricted = IntVec::Zero(sub_len);
    for (size_t lt = 0; lt < sub_tuples; ++lt) {
      std::vector<int> local = tuple_digits(lt, nh, i);
      std::vector<int> global(local.size());
      for (size_t k = 0; k < local.size(); ++k)
        global[k] = h[static_cast<size_t>(local[k])];
      const index_t src = static_cast<index_t>(index_of_digits(global, amb.module.group.n)) * w;
      restricted.segment(static_cast<index_t>(lt) * w, w) = rep.segment(src, w);
    }
    matrix.col(slot) = out.sub.class_coords(restricted);
  }
  out.map.domain = amb.shape;
  out.map.codomain = out.sub.shape;
  out.map.domain_moduli = amb.slot_moduli();
  out.map.codomain_moduli = out.sub.slot_moduli();
  out.map.matrix = std::move(matrix);
  return out;
}

InflationResult inflation_map(const CohomologyGroup& amb, const Subgroup& normal,
                              const CohomologyOptions& opt) {
  const GroupTable& g = amb.module.group;
  QuotientData q = quotient_by_normal(g, normal);
  IntMat basis;
  GLattice fixed = amb.module.fixed_module(normal, q, &basis);
  InflationResult out;
  out.quotient_side = cohomology(fixed, amb.degree, opt);
  const int i = amb.degree;
  const index_t w = amb.module.width();
  const index_t wf = fixed.width();
  const size_t big_tuples = pow_sz(static_cast<size_t>(g.n), i);
  const index_t nslots = static_cast<index_t>(out.quotient_side.pres.slots.size());
  IntMat matrix = int_zero(static_cast<index_t>(amb.pres.slots.size()), nslots);
  for (index_t slot = 0; slot < nslots; ++slot) {
    IntVec rep = out.quotient_side.pres.generators.col(slot);
    IntVec inflated = IntVec::Zero(amb.cochain_len());
    for (size_t bt = 0; bt < big_tuples; ++bt) {
      std::vector<int> digits = tuple_digits(bt, g.n, i);
      std::vector<int> qdigits(digits.size());
      for (size_t k = 0; k < digits.size(); ++k)
        qdigits[k] = q.projection[static_cast<size_t>(digits[k])];
      const index_t src = static_cast<index_t>(index_of_digits(qdigits, q.quotient.n)) * wf;
      inflated.segment(static_cast<index_t>(bt) * w, w) =
          basis * rep.segment(src, wf);
    }
    matrix.col(slot) = amb.class_coords(inflated);
  }
  out.map.domain = out.quotient_side.shape;
  out.map.codomain = amb.shape;
  out.map.domain_moduli = out.quotient_side.slot_moduli();
  out.map.codomain_moduli = amb.slot_moduli();
  out.map.matrix = std::move(matrix);
  return out;
}

void validate_ses(const GLatticeSES& s) {
  if (!s.a.group.same_table(s.b.group) || !s.b.group.same_table(s.c.group))
    throw std::invalid_argument("exact sequence: modules over different groups");
  const index_t wa = s.a.width(), wb = s.b.width(), wc = s.c.width();
  if (s.f.rows() != wb || s.f.cols() != wa || s.g.rows() != wc || s.g.cols() != wb)
    throw std::invalid_argument("exact sequence: map dimensions do not match modules");
  IntMat ra = s.a.relation_columns();
  IntMat rb = s.b.relation_columns();
  IntMat rc = s.c.relation_columns();
  // maps are module maps
  for (index_t j = 0; j < ra.cols(); ++j)
    if (!s.b.vec_in_relations(s.f * ra.col(j)))
      throw std::invalid_argument("exact sequence: f does not respect torsion");
  for (index_t j = 0; j < rb.cols(); ++j)
    if (!s.c.vec_in_relations(s.g * rb.col(j)))
      throw std::invalid_argument("exact sequence: g does not respect torsion");
  for (int x = 0; x < s.a.group.n; ++x) {
    if (!s.b.maps_equal(s.b.act(x) * s.f, s.f * s.a.act(x)))
      throw std::invalid_argument("exact sequence: f is not equivariant");
    if (!s.c.maps_equal(s.c.act(x) * s.g, s.g * s.b.act(x)))
      throw std::invalid_argument("exact sequence: g is not equivariant");
  }
  if (!s.c.maps_equal(s.g * s.f, int_zero(wc, wa)))
    throw std::invalid_argument("exact sequence: g o f is not zero (fails at B)");
  // exact at A: f injective on the module
  {
    IntMat stacked = hcat(s.f, rb);
    IntMat ker = kernel_basis(stacked).topRows(wa);
    for (index_t j = 0; j < ker.cols(); ++j)
      if (!in_column_span(ra, ker.col(j)))
        throw std::invalid_argument("exact sequence: not exact at A (kernel of f nontrivial)");
  }
  // exact at B: ker g = im f
  {
    IntMat stacked = hcat(s.g, rc);
    IntMat ker = kernel_basis(stacked).topRows(wb);
    IntMat frb = hcat(s.f, rb);
    for (index_t j = 0; j < ker.cols(); ++j)
      if (!in_column_span(frb, ker.col(j)))
        throw std::invalid_argument("exact sequence: not exact at B (ker g exceeds im f)");
  }
  // exact at C: g surjective
  {
    IntMat grc = hcat(s.g, rc);
    for (index_t i = 0; i < wc; ++i) {
      IntVec e = IntVec::Zero(wc);
      e(i) = 1;
      if (!in_column_span(grc, e))
        throw std::invalid_argument("exact sequence: not exact at C (g not surjective)");
    }
  }
}

ConnectingResult connecting_hom(const GLatticeSES& s, int degree, const CohomologyOptions& opt) {
  validate_ses(s);
  ConnectingResult out;
  out.hc = cohomology(s.c, degree, opt);
  out.ha = cohomology(s.a, degree + 1, opt);
  const int n = s.a.group.n;
  const index_t wa = s.a.width(), wb = s.b.width(), wc = s.c.width();
  const size_t tuples_i = pow_sz(static_cast<size_t>(n), degree);
  const size_t tuples_i1 = pow_sz(static_cast<size_t>(n), degree + 1);
  IntMat rb = s.b.relation_columns();
  IntMat rc = s.c.relation_columns();
  IntMat lift_g = hcat(s.g, rc);
  IntMat lift_f = hcat(s.f, rb);

  const index_t nslots = static_cast<index_t>(out.hc.pres.slots.size());
  IntMat matrix = int_zero(static_cast<index_t>(out.ha.pres.slots.size()), nslots);
  for (index_t slot = 0; slot < nslots; ++slot) {
    IntVec c = out.hc.pres.generators.col(slot);
    // lift per tuple through g
    IntMat rhs(wc, static_cast<index_t>(tuples_i));
    for (size_t tau = 0; tau < tuples_i; ++tau)
      rhs.col(static_cast<index_t>(tau)) = c.segment(static_cast<index_t>(tau) * wc, wc);
    auto lifted = solve_columns(lift_g, rhs);
    if (!lifted) throw std::logic_error("connecting_hom: lift through g failed");
    IntVec b = IntVec::Zero(static_cast<index_t>(tuples_i) * wb);
    for (size_t tau = 0; tau < tuples_i; ++tau)
      b.segment(static_cast<index_t>(tau) * wb, wb) =
          lifted->col(static_cast<index_t>(tau)).topRows(wb);
    IntVec z = apply_bar_boundary(s.b, degree, b);
    // pull back per tuple through f
    IntMat rhs2(wb, static_cast<index_t>(tuples_i1));
    for (size_t tau = 0; tau < tuples_i1; ++tau)
      rhs2.col(static_cast<index_t>(tau)) = z.segment(static_cast<index_t>(tau) * wb, wb);
    auto pulled = solve_columns(lift_f, rhs2);
    if (!pulled) throw std::logic_error("connecting_hom: boundary not in the image of f");
    IntVec a = IntVec::Zero(static_cast<index_t>(tuples_i1) * wa);
    for (size_t tau = 0; tau < tuples_i1; ++tau)
      a.segment(static_cast<index_t>(tau) * wa, wa) =
          pulled->col(static_cast<index_t>(tau)).topRows(wa);
    if (!out.ha.is_cocycle(a)) throw std::logic_error("connecting_hom: result is not a cocycle");
    matrix.col(slot) = out.ha.class_coords(a);
  }
  out.delta.domain = out.hc.shape;
  out.delta.codomain = out.ha.shape;
  out.delta.domain_moduli = out.hc.slot_moduli();
  out.delta.codomain_moduli = out.ha.slot_moduli();
  out.delta.matrix = std::move(matrix);
  return out;
}

CohMap induced_map(const CohomologyGroup& from, const CohomologyGroup& to, const IntMat& f) {
  const index_t wf = from.module.width();
  const index_t wt = to.module.width();
  if (f.rows() != wt || f.cols() != wf)
    throw std::invalid_argument("induced_map: matrix size does not match modules");
  const size_t tuples = pow_sz(static_cast<size_t>(from.module.group.n), from.degree);
  CohMap map;
  map.domain = from.shape;
  map.codomain = to.shape;
  map.domain_moduli = from.slot_moduli();
  map.codomain_moduli = to.slot_moduli();
  map.matrix = int_zero(static_cast<index_t>(to.pres.slots.size()),
                        static_cast<index_t>(from.pres.slots.size()));
  for (index_t slot = 0; slot < map.matrix.cols(); ++slot) {
    IntVec rep = from.pres.generators.col(slot);
    IntVec mapped = IntVec::Zero(static_cast<index_t>(tuples) * wt);
    for (size_t tau = 0; tau < tuples; ++tau)
      mapped.segment(static_cast<index_t>(tau) * wt, wt) =
          f * rep.segment(static_cast<index_t>(tau) * wf, wf);
    map.matrix.col(slot) = to.class_coords(mapped);
  }
  return map;
}

GLattice induced_module(const GroupTable& g, const Subgroup& h, const GLattice& m_over_h) {
  GroupTable ht = subgroup_table(g, h);
  if (!m_over_h.group.same_table(ht))
    throw std::invalid_argument("induced_module: module group does not match the subgroup");
  // left cosets xH, identity coset first
  std::vector<int> coset_of(static_cast<size_t>(g.n), -1);
  std::vector<int> reps;
  {
    std::vector<int> order(static_cast<size_t>(g.n));
    for (int x = 0; x < g.n; ++x) order[static_cast<size_t>(x)] = x;
    std::swap(order[0], order[static_cast<size_t>(g.identity)]);
    for (int x : order) {
      if (coset_of[static_cast<size_t>(x)] >= 0) continue;
      int c = static_cast<int>(reps.size());
      reps.push_back(x);
      for (int a : h) coset_of[static_cast<size_t>(g.mul(x, a))] = c;
    }
  }
  const int k = static_cast<int>(reps.size());
  std::vector<int> local_index(static_cast<size_t>(g.n), -1);
  for (size_t i = 0; i < h.size(); ++i) local_index[static_cast<size_t>(h[i])] = static_cast<int>(i);
  const index_t rm = m_over_h.free_rank;
  const index_t tm = static_cast<index_t>(m_over_h.torsion.size());
  const index_t w = static_cast<index_t>(k) * (rm + tm);
  auto embed = [&](int copy, index_t coord) -> index_t {
    if (coord < rm) return static_cast<index_t>(copy) * rm + coord;
    return static_cast<index_t>(k) * rm + static_cast<index_t>(copy) * tm + (coord - rm);
  };
  GLattice ind;
  ind.group = g;
  ind.free_rank = static_cast<index_t>(k) * rm;
  for (int copy = 0; copy < k; ++copy)
    for (const auto& mod : m_over_h.torsion) ind.torsion.push_back(mod);
  for (int x = 0; x < g.n; ++x) {
    IntMat mat = int_zero(w, w);
    for (int j = 0; j < k; ++j) {
      int target = g.mul(x, reps[static_cast<size_t>(j)]);
      int cj = coset_of[static_cast<size_t>(target)];
      int hh = g.mul(g.inv(reps[static_cast<size_t>(cj)]), target);
      int lh = local_index[static_cast<size_t>(hh)];
      if (lh < 0) throw std::logic_error("induced_module: coset bookkeeping failed");
      const IntMat& block = m_over_h.act(lh);
      for (index_t r = 0; r < rm + tm; ++r)
        for (index_t c = 0; c < rm + tm; ++c)
          if (block(r, c) != 0) mat(embed(cj, r), embed(j, c)) = block(r, c);
    }
    ind.action.push_back(std::move(mat));
  }
  ind.validate();
  return ind;
}

namespace {

// Solves F x = e (mod codomain moduli) over the integers; the inverse of an
// isomorphism of finite presentations.
std::optional<IntMat> invert_cohmap_matrix(const CohMap& f) {
  const index_t cod = f.matrix.rows();
  const index_t dom = f.matrix.cols();
  IntMat rc = moduli_columns(f.codomain_moduli);
  IntMat aug = hcat(f.matrix, rc);
  IntMat inv = int_zero(dom, cod);
  for (index_t t = 0; t < cod; ++t) {
    IntVec e = IntVec::Zero(cod);
    e(t) = 1;
    auto y = solve_columns(aug, e);
    if (!y) return std::nullopt;
    inv.col(t) = y->topRows(dom);
  }
  return inv;
}

bool maps_equal_mod(const IntMat& a, const IntMat& b, const std::vector<Int>& moduli) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (index_t i = 0; i < a.rows(); ++i)
    for (index_t j = 0; j < a.cols(); ++j) {
      Int d = a(i, j) - b(i, j);
      const Int& m = moduli[static_cast<size_t>(i)];
      if (m == 0) {
        if (d != 0) return false;
      } else if (!mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t())) {
        return false;
      }
    }
  return true;
}

}  // namespace

ShapiroResult shapiro(const GroupTable& g, const Subgroup& h, const GLattice& m_over_h,
                      int degree, const CohomologyOptions& opt) {
  ShapiroResult out;
  out.induced = induced_module(g, h, m_over_h);
  out.g_side = cohomology(out.induced, degree, opt);
  out.h_side = cohomology(m_over_h, degree, opt);
  if (!(out.g_side.shape == out.h_side.shape))
    throw std::logic_error("shapiro: shapes disagree (induced module or cohomology bug)");
  const int k = static_cast<int>(g.n / static_cast<int>(h.size()));
  const index_t rm = m_over_h.free_rank;
  const index_t tm = static_cast<index_t>(m_over_h.torsion.size());
  const index_t wm = rm + tm;
  const index_t wi = out.induced.width();
  const int nh = static_cast<int>(h.size());
  const size_t sub_tuples = pow_sz(static_cast<size_t>(nh), degree);
  auto embed0 = [&](index_t coord) -> index_t {
    // identity-coset copy (index 0) inside the induced layout
    if (coord < rm) return coord;
    return static_cast<index_t>(k) * rm + (coord - rm);
  };
  CohMap iso;
  iso.domain = out.g_side.shape;
  iso.codomain = out.h_side.shape;
  iso.domain_moduli = out.g_side.slot_moduli();
  iso.codomain_moduli = out.h_side.slot_moduli();
  iso.matrix = int_zero(static_cast<index_t>(out.h_side.pres.slots.size()),
                        static_cast<index_t>(out.g_side.pres.slots.size()));
  for (index_t slot = 0; slot < iso.matrix.cols(); ++slot) {
    IntVec rep = out.g_side.pres.generators.col(slot);
    IntVec down = IntVec::Zero(static_cast<index_t>(sub_tuples) * wm);
    for (size_t lt = 0; lt < sub_tuples; ++lt) {
      std::vector<int> local = tuple_digits(lt, nh, degree);
      std::vector<int> global(local.size());
      for (size_t i = 0; i < local.size(); ++i) global[i] = h[static_cast<size_t>(local[i])];
      const index_t src = static_cast<index_t>(index_of_digits(global, g.n)) * wi;
      for (index_t c = 0; c < wm; ++c)
        down(static_cast<index_t>(lt) * wm + c) = rep(src + embed0(c));
    }
    iso.matrix.col(slot) = out.h_side.class_coords(down);
  }
  auto inv = invert_cohmap_matrix(iso);
  if (!inv) throw std::logic_error("shapiro: identification is not surjective");
  CohMap iso_inv;
  iso_inv.domain = out.h_side.shape;
  iso_inv.codomain = out.g_side.shape;
  iso_inv.domain_moduli = out.h_side.slot_moduli();
  iso_inv.codomain_moduli = out.g_side.slot_moduli();
  iso_inv.matrix = *inv;
  // mutually inverse on class coordinates
  const index_t ds = iso.matrix.cols();
  const index_t cs = iso.matrix.rows();
  if (!maps_equal_mod(iso.matrix * iso_inv.matrix, int_identity(cs), iso.codomain_moduli) ||
      !maps_equal_mod(iso_inv.matrix * iso.matrix, int_identity(ds), iso_inv.codomain_moduli))
    throw std::logic_error("shapiro: identification is not invertible");
  out.iso = std::move(iso);
  out.iso_inverse = std::move(iso_inv);
  return out;
}

ShaLatticeResult sha_lattice(const CohomologyGroup& amb, const std::vector<Subgroup>& family,
                             const CohomologyOptions& opt) {
  if (family.empty())
    throw std::invalid_argument("sha_lattice: empty family rejected (ambiguous semantics)");
  ShaLatticeResult out;
  out.family = family;
  const index_t g = static_cast<index_t>(amb.pres.slots.size());
  std::vector<CohMap> maps;
  std::vector<CohomologyGroup> subs;
  for (const auto& h : family) {
    SubgroupRestriction r = restriction_map(amb, h, opt);
    maps.push_back(std::move(r.map));
    subs.push_back(std::move(r.sub));
  }
  // stacked congruence system on ambient class coordinates
  index_t rows = 0, slack = 0;
  for (const auto& m : maps) {
    rows += m.matrix.rows();
    for (const auto& d : m.codomain_moduli)
      if (d != 0) ++slack;
  }
  SparseIntMat s;
  s.rows = rows;
  s.cols.resize(static_cast<size_t>(g + slack));
  index_t row0 = 0, sj = g;
  std::vector<Int> dom_moduli = amb.slot_moduli();
  for (const auto& m : maps) {
    for (index_t j = 0; j < g; ++j)
      for (index_t i = 0; i < m.matrix.rows(); ++i)
        if (m.matrix(i, j) != 0) s.add_entry(j, row0 + i, m.matrix(i, j));
    for (index_t i = 0; i < m.matrix.rows(); ++i)
      if (m.codomain_moduli[static_cast<size_t>(i)] != 0)
        s.add_entry(sj++, row0 + i, m.codomain_moduli[static_cast<size_t>(i)]);
    // ambient relations must map to zero (well-definedness)
    for (index_t j = 0; j < g; ++j) {
      if (dom_moduli[static_cast<size_t>(j)] == 0) continue;
      IntVec col = m.matrix.col(j) * dom_moduli[static_cast<size_t>(j)];
      for (index_t i = 0; i < col.size(); ++i) {
        const Int& d = m.codomain_moduli[static_cast<size_t>(i)];
        bool ok = (d == 0) ? (col(i) == 0) : mpz_divisible_p(col(i).get_mpz_t(), d.get_mpz_t());
        if (!ok) throw std::logic_error("sha_lattice: restriction not well defined on classes");
      }
    }
    row0 += m.matrix.rows();
  }
  s.finalize();
  IntMat ker = kernel_basis(s).topRows(g);
  IntMat ldom = moduli_columns(dom_moduli);
  IntMat all = hcat(ker, ldom);
  QuotientPresentation q = lattice_quotient(all, ldom);
  out.kernel = q.shape;
  out.class_coords = q.generators;
  out.representatives = int_zero(amb.cochain_len(), q.generators.cols());
  for (index_t j = 0; j < q.generators.cols(); ++j)
    out.representatives.col(j) = amb.representative_of(q.generators.col(j));
  // independent re-verification: every kernel class restricts to a coboundary
  // on every family member
  for (index_t j = 0; j < out.representatives.cols(); ++j) {
    for (size_t fi = 0; fi < family.size(); ++fi) {
      const Subgroup& h = family[fi];
      const int nh = static_cast<int>(h.size());
      const index_t w = amb.module.width();
      const size_t sub_tuples = pow_sz(static_cast<size_t>(nh), amb.degree);
      IntVec restricted = IntVec::Zero(static_cast<index_t>(sub_tuples) * w);
      for (size_t lt = 0; lt < sub_tuples; ++lt) {
        std::vector<int> local = tuple_digits(lt, nh, amb.degree);
        std::vector<int> global(local.size());
        for (size_t t = 0; t < local.size(); ++t) global[t] = h[static_cast<size_t>(local[t])];
        const index_t src =
            static_cast<index_t>(index_of_digits(global, amb.module.group.n)) * w;
        restricted.segment(static_cast<index_t>(lt) * w, w) =
            out.representatives.col(j).segment(src, w);
      }
      if (!subs[fi].is_coboundary(restricted))
        throw std::logic_error("sha_lattice: kernel class does not restrict to a coboundary");
    }
  }
  return out;
}

bool sha_kernel_contains(const CohomologyGroup& amb, const ShaLatticeResult& big,
                         const ShaLatticeResult& small) {
  IntMat ldom = moduli_columns(amb.slot_moduli());
  IntMat span = hcat(big.class_coords, ldom);
  for (index_t j = 0; j < small.class_coords.cols(); ++j)
    if (!in_column_span(span, small.class_coords.col(j))) return false;
  return true;
}

}  // namespace torlat
