#include "torlat/torus.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace torlat {

Subgroup TorusDescriptor::action_kernel() const {
  Subgroup k;
  for (int g = 0; g < splitting_group.n; ++g)
    if (mat_is_identity(char_action.act(g))) k.push_back(g);
  return k;
}

TorusDescriptor make_split_torus(const GroupTable& g, index_t d) {
  if (d < 0) throw std::invalid_argument("make_split_torus: negative dimension");
  TorusDescriptor t;
  t.splitting_group = g;
  t.char_action = GLattice::trivial(g, d);
  t.provenance = "split(" + std::to_string(d) + ")";
  return t;
}

TorusDescriptor make_restriction_torus(const GroupTable& g, const Subgroup& h) {
  TorusDescriptor t;
  t.splitting_group = g;
  t.char_action = GLattice::permutation_cosets(g, h);
  t.provenance = "restriction(G" + std::to_string(g.n) + "/H" + std::to_string(h.size()) + ")";
  return t;
}

TorusDescriptor make_norm_one_torus(const GroupTable& g, const Subgroup& h) {
  TorusDescriptor t;
  t.splitting_group = g;
  t.char_action = GLattice::coset_quotient_by_trivial(g, h);
  t.provenance = "norm_one(G" + std::to_string(g.n) + "/H" + std::to_string(h.size()) + ")";
  return t;
}

TorusDescriptor make_product_torus(const TorusDescriptor& a, const TorusDescriptor& b) {
  if (!a.splitting_group.same_table(b.splitting_group))
    throw std::invalid_argument("make_product_torus: splitting groups differ");
  TorusDescriptor t;
  t.splitting_group = a.splitting_group;
  t.char_action = GLattice::direct_sum(a.char_action, b.char_action);
  t.provenance = "product(" + a.provenance + "," + b.provenance + ")";
  return t;
}

TorusDescriptor make_dual_torus(const TorusDescriptor& in) {
  TorusDescriptor t;
  t.splitting_group = in.splitting_group;
  t.char_action = in.char_action.dual();
  t.provenance = "dual(" + in.provenance + ")";
  return t;
}

GLattice torsion_module(const TorusDescriptor& t, const Int& n) {
  if (n < 2) throw std::invalid_argument("torsion_module: n >= 2 required");
  return t.cocharacter_action().tensor_mod(n);
}

bool good_reduction_at(const TorusDescriptor& t, const Subgroup& inertia) {
  if (!is_subgroup(t.splitting_group, inertia))
    throw std::invalid_argument("good_reduction_at: inertia is not a subgroup");
  for (int g : inertia)
    if (!mat_is_identity(t.char_action.act(g))) return false;
  return true;
}

TorusDescriptor with_provenance(TorusDescriptor t, std::string p) {
  t.provenance = std::move(p);
  return t;
}

TorusIsomorphism tori_isomorphic(const TorusDescriptor& t1, const TorusDescriptor& t2,
                                 unsigned long search_bound) {
  TorusIsomorphism out;
  if (!t1.splitting_group.same_table(t2.splitting_group)) {
    out.status = ConjugacyStatus::None;
    out.certificate = "splitting groups differ";
    return out;
  }
  if (t1.dimension() != t2.dimension()) {
    out.status = ConjugacyStatus::None;
    out.certificate = "dimensions differ";
    return out;
  }
  if (t1.action_kernel() != t2.action_kernel()) {
    out.status = ConjugacyStatus::None;
    out.certificate = "faithful quotients differ (action kernels disagree)";
    return out;
  }
  std::vector<int> gens = generating_set(t1.splitting_group);
  std::vector<IntMat> as, bs;
  for (int g : gens) {
    as.push_back(t1.char_action.act(g));
    bs.push_back(t2.char_action.act(g));
  }
  ConjugacySearchOptions opt;
  opt.coeff_bound = search_bound;
  ConjugacyResult r = glz_conjugate_search(as, bs, opt);
  if (r.status == ConjugacyStatus::Inconclusive && search_bound < 10) {
    opt.coeff_bound = 10;
    r = glz_conjugate_search(as, bs, opt);
  }
  out.status = r.status;
  out.conjugator = r.conjugator;
  out.certificate = r.certificate;
  return out;
}

namespace {

// candidate images: the elements of the canonical classification tables
std::vector<IntMat> candidate_elements(index_t d) {
  std::vector<IntMat> out;
  std::set<std::string> seen;
  auto push = [&](const IntMat& m) {
    if (seen.insert(mat_key(m)).second) out.push_back(m);
  };
  if (d == 1) {
    push(int_identity(1));
    IntMat minus = int_identity(1);
    minus(0, 0) = -1;
    push(minus);
  } else if (d == 2) {
    ConjClassTable t = enumerate_finite_subgroups_gl2();
    for (const auto& c : t.classes)
      for (const auto& m : c.representative.elements) push(m);
  } else {
    throw std::invalid_argument("enumerate_good_reduction_tori: unsupported dimension");
  }
  std::sort(out.begin(), out.end(), mat_lt);
  return out;
}

// extend generator images to a homomorphism G -> GL_d(Z); empty when not one
std::vector<IntMat> extend_matrix_hom(const GroupTable& g, const std::vector<int>& gens,
                                      const std::vector<IntMat>& images, index_t d) {
  std::vector<IntMat> phi(static_cast<size_t>(g.n));
  std::vector<char> known(static_cast<size_t>(g.n), 0);
  phi[static_cast<size_t>(g.identity)] = int_identity(d);
  known[static_cast<size_t>(g.identity)] = 1;
  std::vector<int> queue{g.identity};
  for (size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    for (size_t k = 0; k < gens.size(); ++k) {
      int y = g.mul(gens[k], x);
      IntMat m = images[k] * phi[static_cast<size_t>(x)];
      if (!known[static_cast<size_t>(y)]) {
        phi[static_cast<size_t>(y)] = std::move(m);
        known[static_cast<size_t>(y)] = 1;
        queue.push_back(y);
      } else if (!mat_eq(phi[static_cast<size_t>(y)], m)) {
        return {};
      }
    }
  }
  for (int x = 0; x < g.n; ++x)
    if (!known[static_cast<size_t>(x)]) return {};
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (!mat_eq(phi[static_cast<size_t>(g.mul(a, b))],
                  phi[static_cast<size_t>(a)] * phi[static_cast<size_t>(b)]))
        return {};
  return phi;
}

}  // namespace

std::vector<TorusDescriptor> enumerate_good_reduction_tori(
    const GroupTable& g, const std::vector<Subgroup>& inertia_data, index_t d) {
  if (d < 1 || d > 2)
    throw std::invalid_argument("enumerate_good_reduction_tori: unsupported dimension");
  for (const auto& h : inertia_data)
    if (!is_subgroup(g, h))
      throw std::invalid_argument("enumerate_good_reduction_tori: inertia datum not a subgroup");
  std::vector<IntMat> candidates = candidate_elements(d);
  std::vector<int> gens = generating_set(g);
  std::vector<TorusDescriptor> classes;

  std::vector<size_t> idx(gens.size(), 0);
  for (;;) {
    std::vector<IntMat> images;
    images.reserve(gens.size());
    bool order_ok = true;
    for (size_t k = 0; k < gens.size(); ++k) {
      const IntMat& cand = candidates[idx[k]];
      // image order must divide the generator order
      OrderResult r = matrix_order(cand, static_cast<unsigned long>(g.n));
      if (!r.finite || g.order_of(gens[k]) % static_cast<int>(r.order) != 0) {
        order_ok = false;
        break;
      }
      images.push_back(cand);
    }
    if (order_ok) {
      std::vector<IntMat> phi = extend_matrix_hom(g, gens, images, d);
      if (!phi.empty()) {
        bool kills_inertia = true;
        for (const auto& h : inertia_data) {
          for (int e : h)
            if (!mat_is_identity(phi[static_cast<size_t>(e)])) {
              kills_inertia = false;
              break;
            }
          if (!kills_inertia) break;
        }
        if (kills_inertia) {
          // Minkowski consistency: no nonidentity image is congruent to the
          // identity mod 3
          for (const auto& m : phi)
            if (minkowski_reduction_check(m) != MinkowskiCheck::Pass)
              throw std::logic_error("census: Minkowski violation (bug)");
          TorusDescriptor t;
          t.splitting_group = g;
          t.char_action = GLattice::from_action(g, phi, d, {});
          t.provenance = "census(d=" + std::to_string(d) + ")";
          bool fresh = true;
          for (const auto& known : classes) {
            TorusIsomorphism iso = tori_isomorphic(known, t);
            if (iso.status == ConjugacyStatus::Found) {
              fresh = false;
              break;
            }
            if (iso.status == ConjugacyStatus::Inconclusive)
              throw std::logic_error("census: inconclusive isomorphism test");
          }
          if (fresh) {
            t.provenance += "#" + std::to_string(classes.size());
            classes.push_back(std::move(t));
          }
        }
      }
    }
    size_t p = 0;
    for (;;) {
      if (p == gens.size()) return classes;
      if (++idx[p] < candidates.size()) break;
      idx[p] = 0;
      ++p;
    }
  }
}

}  // namespace torlat
