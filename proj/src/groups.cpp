#include "torlat/groups.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace torlat {

namespace {

void validate_table(const GroupTable& g) {
  const int n = g.n;
  if (n <= 0 || g.table.size() != static_cast<size_t>(n))
    throw std::invalid_argument("group table: bad dimensions");
  for (const auto& row : g.table) {
    if (row.size() != static_cast<size_t>(n))
      throw std::invalid_argument("group table: ragged row");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("group table: entry out of range");
  }
  for (int a = 0; a < n; ++a)
    if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a)
      throw std::invalid_argument("group table: identity law fails");
  for (int a = 0; a < n; ++a) {
    int ai = g.inv(a);
    if (g.mul(a, ai) != g.identity || g.mul(ai, a) != g.identity)
      throw std::invalid_argument("group table: inverse law fails");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw std::invalid_argument("group table: associativity fails");
}

}  // namespace

int GroupTable::order_of(int g) const {
  int k = 1;
  int x = g;
  while (x != identity) {
    x = mul(x, g);
    ++k;
    if (k > n) throw std::logic_error("order_of: runaway (table not a group?)");
  }
  return k;
}

std::vector<int> GroupTable::element_orders() const {
  std::vector<int> out(static_cast<size_t>(n));
  for (int g = 0; g < n; ++g) out[static_cast<size_t>(g)] = order_of(g);
  return out;
}

bool GroupTable::is_abelian() const {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

GroupTable GroupTable::from_table(std::vector<std::vector<int>> t) {
  GroupTable g;
  g.n = static_cast<int>(t.size());
  g.table = std::move(t);
  // locate identity
  g.identity = -1;
  for (int e = 0; e < g.n; ++e) {
    bool ok = true;
    for (int a = 0; a < g.n && ok; ++a)
      if (g.mul(e, a) != a || g.mul(a, e) != a) ok = false;
    if (ok) {
      g.identity = e;
      break;
    }
  }
  if (g.identity < 0) throw std::invalid_argument("group table: no identity");
  g.inverse.assign(static_cast<size_t>(g.n), -1);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (g.mul(a, b) == g.identity && g.mul(b, a) == g.identity)
        g.inverse[static_cast<size_t>(a)] = b;
  for (int a = 0; a < g.n; ++a)
    if (g.inverse[static_cast<size_t>(a)] < 0)
      throw std::invalid_argument("group table: missing inverse");
  validate_table(g);
  return g;
}

GroupTable GroupTable::trivial() { return cyclic(1); }

GroupTable GroupTable::cyclic(int m) {
  if (m < 1) throw std::invalid_argument("cyclic: m >= 1 required");
  std::vector<std::vector<int>> t(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a + b) % m;
  return from_table(std::move(t));
}

GroupTable GroupTable::direct_product(const GroupTable& a, const GroupTable& b) {
  const int n = a.n * b.n;
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  auto code = [&](int x, int y) { return x * b.n + y; };
  for (int x1 = 0; x1 < a.n; ++x1)
    for (int y1 = 0; y1 < b.n; ++y1)
      for (int x2 = 0; x2 < a.n; ++x2)
        for (int y2 = 0; y2 < b.n; ++y2)
          t[static_cast<size_t>(code(x1, y1))][static_cast<size_t>(code(x2, y2))] =
              code(a.mul(x1, x2), b.mul(y1, y2));
  return from_table(std::move(t));
}

GroupTable GroupTable::from_permutations(int deg, const std::vector<std::vector<int>>& gens) {
  std::vector<int> id(static_cast<size_t>(deg));
  for (int i = 0; i < deg; ++i) id[static_cast<size_t>(i)] = i;
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i) r[static_cast<size_t>(i)] = p[static_cast<size_t>(q[static_cast<size_t>(i)])];
    return r;
  };
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : gens) {
      auto next = compose(gen, elems[head]);
      if (!index.count(next)) {
        index[next] = static_cast<int>(elems.size());
        elems.push_back(next);
        if (elems.size() > 10000) throw std::invalid_argument("from_permutations: group too large");
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      t[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          index.at(compose(elems[static_cast<size_t>(a)], elems[static_cast<size_t>(b)]));
  return from_table(std::move(t));
}

GroupTable GroupTable::dihedral(int m) {
  if (m < 1) throw std::invalid_argument("dihedral: m >= 1 required");
  // indices: r^k -> k, r^k s -> m + k
  const int n = 2 * m;
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  auto mul = [&](int a, int b) {
    bool fa = a >= m, fb = b >= m;
    int ka = fa ? a - m : a, kb = fb ? b - m : b;
    // (r^ka s^fa)(r^kb s^fb): s r^k = r^{-k} s
    int k = fa ? (ka - kb % m + 2 * m) % m : (ka + kb) % m;
    bool f = fa != fb;
    return (f ? m : 0) + k;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<size_t>(a)][static_cast<size_t>(b)] = mul(a, b);
  return from_table(std::move(t));
}

GroupTable GroupTable::quaternion8() {
  // 1, -1, i, -i, j, -j, k, -k as signed permutation on coded units
  // Use the regular multiplication on {±1, ±i, ±j, ±k} with indices 0..7:
  // 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
  auto neg = [](int x) { return x ^ 1; };
  auto base = [](int x) { return x >> 1; };  // 0:1 1:i 2:j 3:k
  auto sign = [](int x) { return x & 1; };
  // base multiplication with sign: i*j=k, j*k=i, k*i=j, x*x=-1 for x!=1
  auto bmul = [&](int a, int b, int& s) {
    s = 0;
    if (a == 0) return b;
    if (b == 0) return a;
    if (a == b) {
      s = 1;
      return 0;
    }
    // i=1 j=2 k=3
    static const int prod[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
    static const int psg[4][4] = {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}};
    s = psg[a][b];
    return prod[a][b];
  };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int s;
      int c = bmul(base(a), base(b), s);
      int total_sign = (sign(a) + sign(b) + s) % 2;
      int idx = (c << 1) | total_sign;
      t[static_cast<size_t>(a)][static_cast<size_t>(b)] = idx;
      (void)neg;
    }
  return from_table(std::move(t));
}

GroupTable GroupTable::alternating4() {
  return from_permutations(4, {{1, 0, 3, 2}, {1, 2, 0, 3}});  // (01)(23), (012)
}

GroupTable GroupTable::dicyclic3() {
  // <a, b | a^6 = 1, b^2 = a^3, b a b^-1 = a^-1>, faithful on 12 points via
  // the regular action of the presentation closure; realize as permutations
  // of Z/12 under the embedding in units of the group ring is overkill --
  // build directly from the normal form a^k b^e, k in 0..5, e in 0..1.
  const int n = 12;
  auto code = [](int k, int e) { return e * 6 + k; };
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int k1 = 0; k1 < 6; ++k1)
    for (int e1 = 0; e1 < 2; ++e1)
      for (int k2 = 0; k2 < 6; ++k2)
        for (int e2 = 0; e2 < 2; ++e2) {
          // (a^k1 b^e1)(a^k2 b^e2); b a^k = a^-k b, b^2 = a^3
          int k = e1 ? (k1 - k2 % 6 + 12) % 6 : (k1 + k2) % 6;
          int e = e1 + e2;
          if (e == 2) {
            k = (k + 3) % 6;
            e = 0;
          }
          t[static_cast<size_t>(code(k1, e1))][static_cast<size_t>(code(k2, e2))] = code(k, e);
        }
  return from_table(std::move(t));
}

// ---------------------------------------------------------------------------

bool is_subgroup(const GroupTable& g, const Subgroup& h) {
  if (h.empty()) return false;
  std::set<int> s(h.begin(), h.end());
  if (s.size() != h.size()) return false;
  if (!s.count(g.identity)) return false;
  for (int a : h) {
    if (a < 0 || a >= g.n) return false;
    if (!s.count(g.inv(a))) return false;
    for (int b : h)
      if (!s.count(g.mul(a, b))) return false;
  }
  return true;
}

Subgroup subgroup_closure(const GroupTable& g, const std::vector<int>& gens) {
  std::set<int> s{g.identity};
  std::vector<int> queue{g.identity};
  for (int x : gens)
    if (!s.count(x)) {
      s.insert(x);
      queue.push_back(x);
    }
  for (size_t head = 0; head < queue.size(); ++head) {
    for (int x : std::vector<int>(s.begin(), s.end())) {
      int p = g.mul(queue[head], x);
      if (!s.count(p)) {
        s.insert(p);
        queue.push_back(p);
      }
      p = g.mul(x, queue[head]);
      if (!s.count(p)) {
        s.insert(p);
        queue.push_back(p);
      }
    }
  }
  return Subgroup(s.begin(), s.end());
}

std::vector<Subgroup> all_subgroups(const GroupTable& g) {
  std::set<Subgroup> known;
  for (int x = 0; x < g.n; ++x) known.insert(subgroup_closure(g, {x}));
  // extend until fixpoint: every subgroup is generated by a smaller subgroup
  // plus one element
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subgroup> snapshot(known.begin(), known.end());
    for (const auto& h : snapshot)
      for (int x = 0; x < g.n; ++x) {
        std::vector<int> gens = h;
        gens.push_back(x);
        Subgroup bigger = subgroup_closure(g, gens);
        if (known.insert(bigger).second) grew = true;
      }
  }
  return std::vector<Subgroup>(known.begin(), known.end());
}

std::vector<Subgroup> cyclic_subgroups(const GroupTable& g) {
  std::set<Subgroup> out;
  for (int x = 0; x < g.n; ++x) out.insert(subgroup_closure(g, {x}));
  return std::vector<Subgroup>(out.begin(), out.end());
}

bool is_normal(const GroupTable& g, const Subgroup& h) {
  std::set<int> s(h.begin(), h.end());
  for (int x = 0; x < g.n; ++x)
    for (int a : h)
      if (!s.count(g.mul(g.mul(x, a), g.inv(x)))) return false;
  return true;
}

Subgroup full_subgroup(const GroupTable& g) {
  Subgroup h(static_cast<size_t>(g.n));
  for (int i = 0; i < g.n; ++i) h[static_cast<size_t>(i)] = i;
  return h;
}

GroupTable subgroup_table(const GroupTable& g, const Subgroup& h) {
  if (!is_subgroup(g, h)) throw std::invalid_argument("subgroup_table: not a subgroup");
  std::map<int, int> local;
  for (size_t i = 0; i < h.size(); ++i) local[h[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(h.size(), std::vector<int>(h.size()));
  for (size_t a = 0; a < h.size(); ++a)
    for (size_t b = 0; b < h.size(); ++b) t[a][b] = local.at(g.mul(h[a], h[b]));
  return GroupTable::from_table(std::move(t));
}

QuotientData quotient_by_normal(const GroupTable& g, const Subgroup& nsub) {
  if (!is_subgroup(g, nsub) || !is_normal(g, nsub))
    throw std::invalid_argument("quotient_by_normal: not a normal subgroup");
  QuotientData q;
  q.projection.assign(static_cast<size_t>(g.n), -1);
  for (int x = 0; x < g.n; ++x) {
    if (q.projection[static_cast<size_t>(x)] >= 0) continue;
    int c = static_cast<int>(q.coset_rep.size());
    q.coset_rep.push_back(x);
    for (int a : nsub) q.projection[static_cast<size_t>(g.mul(x, a))] = c;
  }
  const int m = static_cast<int>(q.coset_rep.size());
  std::vector<std::vector<int>> t(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      t[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          q.projection[static_cast<size_t>(g.mul(q.coset_rep[static_cast<size_t>(a)],
                                                 q.coset_rep[static_cast<size_t>(b)]))];
  q.quotient = GroupTable::from_table(std::move(t));
  return q;
}

std::vector<int> generating_set(const GroupTable& g) {
  std::vector<int> gens;
  Subgroup have{g.identity};
  while (static_cast<int>(have.size()) < g.n) {
    // add the smallest element giving the largest closure, preferring small
    // generating sets; greedy by closure size then by index
    int best = -1;
    size_t best_size = have.size();
    for (int x = 0; x < g.n; ++x) {
      if (std::binary_search(have.begin(), have.end(), x)) continue;
      std::vector<int> trial = gens;
      trial.push_back(x);
      size_t sz = subgroup_closure(g, trial).size();
      if (sz > best_size) {
        best = x;
        best_size = sz;
      }
    }
    gens.push_back(best);
    have = subgroup_closure(g, gens);
  }
  if (gens.empty()) gens.push_back(g.identity);
  return gens;
}

namespace {

// Extends gen images to a full map by BFS over words; nullopt when the
// extension is inconsistent or not a homomorphism.
std::optional<std::vector<int>> extend_hom(const GroupTable& g, const std::vector<int>& gens,
                                           const std::vector<int>& images, const TargetGroup& t) {
  std::vector<int> phi(static_cast<size_t>(g.n), -1);
  phi[static_cast<size_t>(g.identity)] = t.identity;
  std::vector<int> queue{g.identity};
  for (size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    for (size_t k = 0; k < gens.size(); ++k) {
      int y = g.mul(x, gens[k]);
      int img = t.table[static_cast<size_t>(phi[static_cast<size_t>(x)])]
                       [static_cast<size_t>(images[k])];
      if (phi[static_cast<size_t>(y)] < 0) {
        phi[static_cast<size_t>(y)] = img;
        queue.push_back(y);
      } else if (phi[static_cast<size_t>(y)] != img) {
        return std::nullopt;
      }
    }
  }
  for (int x = 0; x < g.n; ++x)
    if (phi[static_cast<size_t>(x)] < 0) return std::nullopt;  // gens do not generate
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (phi[static_cast<size_t>(g.mul(a, b))] !=
          t.table[static_cast<size_t>(phi[static_cast<size_t>(a)])]
                 [static_cast<size_t>(phi[static_cast<size_t>(b)])])
        return std::nullopt;
  return phi;
}

}  // namespace

std::vector<std::vector<int>> all_homomorphisms(const GroupTable& g, const TargetGroup& t) {
  std::vector<int> gens = generating_set(g);
  std::vector<std::vector<int>> out;
  std::vector<int> images(gens.size(), 0);
  const size_t k = gens.size();
  std::vector<size_t> idx(k, 0);
  for (;;) {
    for (size_t i = 0; i < k; ++i) images[i] = static_cast<int>(idx[i]);
    auto phi = extend_hom(g, gens, images, t);
    if (phi) out.push_back(*phi);
    size_t p = 0;
    for (;;) {
      if (p == k) return out;
      if (++idx[p] < static_cast<size_t>(t.size)) break;
      idx[p] = 0;
      ++p;
    }
  }
}

std::vector<std::vector<int>> all_isomorphisms(const GroupTable& g, const TargetGroup& t) {
  std::vector<std::vector<int>> out;
  if (g.n != t.size) return out;
  for (auto& phi : all_homomorphisms(g, t)) {
    std::set<int> img(phi.begin(), phi.end());
    if (static_cast<int>(img.size()) == g.n) out.push_back(phi);
  }
  return out;
}

std::string iso_label(const GroupTable& g) {
  const int n = g.n;
  auto orders = g.element_orders();
  std::sort(orders.begin(), orders.end());
  bool ab = g.is_abelian();
  int max_order = orders.empty() ? 1 : orders.back();
  if (max_order == n) return "C" + std::to_string(n);
  if (n == 4) return "V4";
  if (n == 6) return "S3";
  if (n == 8) {
    if (ab) return max_order == 4 ? "C2xC4" : "C2xC2xC2";
    int inv = static_cast<int>(std::count(orders.begin(), orders.end(), 2));
    return inv == 5 ? "D4" : "Q8";
  }
  if (n == 9) return "C3xC3";
  if (n == 10) return "D5";
  if (n == 12) {
    if (ab) return "C2xC6";
    if (std::count(orders.begin(), orders.end(), 3) == 8) return "A4";
    if (std::count(orders.begin(), orders.end(), 4) > 0) return "Dic3";
    return "D6";
  }
  return "G" + std::to_string(n);
}

}  // namespace torlat
