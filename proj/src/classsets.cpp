#include "torlat/classsets.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace torlat {

void OpenCurve::validate() const {
  if (!is_prime_small(p)) throw std::invalid_argument("OpenCurve: p must be prime");
  std::set<Place> seen;
  for (const Place& v : removed) {
    if (v.kind == Place::Kind::RationalPrime)
      throw std::invalid_argument("OpenCurve: rational primes are not places of F_p(t)");
    if (v.kind == Place::Kind::FinitePoly && v.poly.p != p)
      throw std::invalid_argument("OpenCurve: place has wrong characteristic");
    if (!seen.insert(v).second)
      throw std::invalid_argument("OpenCurve: removed places must be distinct");
  }
}

AbelianGroupShape picard_open_p1(const OpenCurve& curve) {
  curve.validate();
  AbelianGroupShape s;
  if (curve.removed.empty()) {
    // degree map is an isomorphism for the projective line
    s.free_rank = 1;
    return s;
  }
  Int g = 0;
  for (const Place& v : curve.removed) g = gcd(g, Int(v.degree()));
  if (g > 1) s.invariant_factors.push_back(g);
  return s;
}

UnitGroup units_open_p1(const OpenCurve& curve) {
  curve.validate();
  UnitGroup u;
  u.torsion_order = curve.p - 1;
  if (curve.removed.empty()) return u;  // constants only
  bool has_infinity = false;
  std::vector<FpPoly> affine;
  for (const Place& v : curve.removed) {
    if (v.kind == Place::Kind::Infinity)
      has_infinity = true;
    else
      affine.push_back(v.poly);
  }
  if (has_infinity) {
    // each monic removed polynomial is a unit: divisor [v] - deg(v)[inf]
    for (const FpPoly& f : affine) u.generators.emplace_back(f, FpPoly::one(curve.p));
  } else {
    // degree-zero combinations of the removed polynomials
    const index_t m = static_cast<index_t>(affine.size());
    IntMat degs = int_zero(1, m);
    for (index_t j = 0; j < m; ++j) degs(0, j) = affine[static_cast<size_t>(j)].degree();
    IntMat ker = kernel_basis(degs);
    for (index_t j = 0; j < ker.cols(); ++j) {
      FpPoly num = FpPoly::one(curve.p);
      FpPoly den = FpPoly::one(curve.p);
      for (index_t i = 0; i < m; ++i) {
        long e = ker(i, j).get_si();
        for (long k = 0; k < e; ++k) num = fp_mul(num, affine[static_cast<size_t>(i)]);
        for (long k = 0; k < -e; ++k) den = fp_mul(den, affine[static_cast<size_t>(i)]);
      }
      u.generators.emplace_back(std::move(num), std::move(den));
    }
  }
  u.free_rank = u.generators.size();
  if (u.free_rank != curve.removed.size() - 1)
    throw std::logic_error("units_open_p1: rank bookkeeping failed");
  // independence via the order vectors at the removed places
  GlobalFieldModel model = GlobalFieldModel::fp_t(curve.p);
  IntMat ords = int_zero(static_cast<index_t>(curve.removed.size()),
                         static_cast<index_t>(u.generators.size()));
  for (size_t j = 0; j < u.generators.size(); ++j)
    for (size_t i = 0; i < curve.removed.size(); ++i)
      ords(static_cast<index_t>(i), static_cast<index_t>(j)) =
          ord_at(model, u.generators[j].first, u.generators[j].second, curve.removed[i]);
  index_t rank = 0;
  for (const Int& d : smith_diagonal(ords))
    if (d != 0) ++rank;
  if (rank != static_cast<index_t>(u.generators.size()))
    throw std::logic_error("units_open_p1: generators are not multiplicatively independent");
  return u;
}

AbelianGroupShape class_set_split_torus(const OpenCurve& curve, index_t d) {
  if (d < 1) throw std::invalid_argument("class_set_split_torus: d >= 1 required");
  AbelianGroupShape pic = picard_open_p1(curve);
  AbelianGroupShape out;
  out.free_rank = pic.free_rank * static_cast<size_t>(d);
  for (const Int& f : pic.invariant_factors)
    for (index_t k = 0; k < d; ++k) out.invariant_factors.push_back(f);
  std::sort(out.invariant_factors.begin(), out.invariant_factors.end());
  return out;
}

ConditionTWitness condition_T_split(const OpenCurve& curve, index_t d) {
  curve.validate();
  ConditionTWitness w;
  w.before = class_set_split_torus(curve, d);
  OpenCurve extended = curve;
  if (!picard_open_p1(curve).is_trivial()) {
    // one degree-1 place suffices: its class generates modulo everything else
    std::vector<Place> degree_one;
    for (const FpPoly& f : monic_irreducibles(curve.p, 1))
      degree_one.push_back(Place::finite_poly(f));
    degree_one.push_back(Place::infinity());
    for (const Place& v : degree_one) {
      if (std::find(curve.removed.begin(), curve.removed.end(), v) != curve.removed.end())
        continue;
      w.extra_removed.push_back(v);
      extended.removed.push_back(v);
      break;
    }
    if (w.extra_removed.empty())
      throw std::logic_error("condition_T_split: no degree-1 place available");
  }
  w.after = class_set_split_torus(extended, d);
  w.verified = w.after.is_trivial();
  if (!w.verified) throw std::logic_error("condition_T_split: witness verification failed");
  return w;
}

// ---------------------------------------------------------------------------

bool QuadForm::operator<(const QuadForm& o) const {
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  return c < o.c;
}

Int form_discriminant(const QuadForm& f) { return f.b * f.b - 4 * f.a * f.c; }

bool is_reduced(const QuadForm& f) {
  Int ab = abs(f.b);
  if (!(ab <= f.a && f.a <= f.c)) return false;
  if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

QuadForm reduce_form(QuadForm f) {
  if (f.a <= 0 || form_discriminant(f) >= 0)
    throw std::invalid_argument("reduce_form: need a positive definite form");
  for (int guard = 0; guard < 10000; ++guard) {
    // normalize: -a < b <= a
    if (!(-f.a < f.b && f.b <= f.a)) {
      Int r, q;
      // b + a = 2a q + r with 0 <= r < 2a ; new b = r - a
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), Int(f.b + f.a).get_mpz_t(),
                  Int(2 * f.a).get_mpz_t());
      Int nb = r - f.a;
      if (nb == -f.a) {  // choose the representative b = a of the class mod 2a
        q -= 1;
        nb = f.a;
      }
      Int nc = f.c - q * (f.b + nb) / 2;
      f.b = nb;
      f.c = nc;
    }
    if (f.a > f.c) {
      f = QuadForm{f.c, -f.b, f.a};
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    if (is_reduced(f)) return f;
  }
  throw std::logic_error("reduce_form: did not terminate");
}

QuadForm principal_form(const Int& d) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), d.get_mpz_t(), 4);
  if (r == 1) return QuadForm{1, 1, (1 - d) / 4};
  if (r == 0) return QuadForm{1, 0, -d / 4};
  throw std::invalid_argument("principal_form: discriminant not 0 or 1 mod 4");
}

QuadForm inverse_form(const QuadForm& f) { return reduce_form(QuadForm{f.a, -f.b, f.c}); }

namespace {

// equivalent form with leading coefficient f(x, y), for coprime (x, y)
QuadForm transform_to_value(const QuadForm& f, const Int& x, const Int& y) {
  // complete (x, y) to a unimodular matrix [[x, u], [y, v]]: x v - y u = 1
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  if (g != 1) throw std::invalid_argument("transform_to_value: (x, y) not coprime");
  Int v = s;
  Int u = -t;
  Int a2 = f.a * x * x + f.b * x * y + f.c * y * y;
  Int b2 = 2 * f.a * x * u + f.b * (x * v + y * u) + 2 * f.c * y * v;
  Int c2 = f.a * u * u + f.b * u * v + f.c * v * v;
  return QuadForm{a2, b2, c2};
}

}  // namespace

QuadForm compose_forms(const QuadForm& f, const QuadForm& g) {
  Int d = form_discriminant(f);
  if (d != form_discriminant(g))
    throw std::invalid_argument("compose_forms: discriminants differ");
  // find an equivalent of g whose leading coefficient is coprime to a(f)
  QuadForm g2 = g;
  {
    bool found = false;
    for (long x = 0; x <= 20 && !found; ++x)
      for (long y = -20; y <= 20 && !found; ++y) {
        Int gx;
        mpz_gcd(gx.get_mpz_t(), Int(x).get_mpz_t(), Int(y).get_mpz_t());
        if (gx != 1) continue;
        Int val = g.a * x * x + g.b * x * y + g.c * y * y;
        if (val <= 0) continue;
        Int co;
        mpz_gcd(co.get_mpz_t(), val.get_mpz_t(), f.a.get_mpz_t());
        if (co == 1) {
          g2 = transform_to_value(g, Int(x), Int(y));
          found = true;
        }
      }
    if (!found) throw std::logic_error("compose_forms: no coprime representative found");
  }
  // concordant pair: B = b(f) mod 2a(f), B = b(g2) mod 2a(g2); solvable since
  // gcd(a(f), a(g2)) = 1 and both b's have the parity of the discriminant
  const Int a1 = f.a, a2 = g2.a;
  Int m1 = 2 * a1, m2 = 2 * a2;
  // CRT with gcd(m1, m2) = 2 and b1 = b2 mod 2
  Int gg, u, v;
  mpz_gcdext(gg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
  Int diff = g2.b - f.b;
  if (!mpz_divisible_p(diff.get_mpz_t(), gg.get_mpz_t()))
    throw std::logic_error("compose_forms: concordance congruence unsolvable");
  Int lcm = m1 / gg * m2;
  Int bb = f.b + m1 * (u * (diff / gg));
  mpz_fdiv_r(bb.get_mpz_t(), bb.get_mpz_t(), lcm.get_mpz_t());
  Int a3 = a1 * a2;
  Int c3num = bb * bb - d;
  if (!mpz_divisible_p(c3num.get_mpz_t(), Int(4 * a3).get_mpz_t()))
    throw std::logic_error("compose_forms: composite not integral");
  QuadForm out{a3, bb, c3num / (4 * a3)};
  // primitive part (forms of fundamental discriminant stay primitive)
  Int cont = gcd(gcd(out.a, out.b), out.c);
  if (cont != 1) {
    out.a /= cont;
    out.b /= cont;
    out.c /= cont;
  }
  return reduce_form(out);
}

bool is_fundamental_discriminant(const Int& d) {
  if (d >= 0) return false;
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), d.get_mpz_t(), 4);
  if (r == 1) {
    // squarefree check
    for (const auto& [q, e] : factor_int(d))
      if (e >= 2) return false;
    return true;
  }
  if (r != 0) return false;
  Int m = d / 4;
  Int rm;
  mpz_fdiv_r_ui(rm.get_mpz_t(), m.get_mpz_t(), 4);
  if (rm != 2 && rm != 3) return false;
  for (const auto& [q, e] : factor_int(m))
    if (e >= 2) return false;
  return true;
}

std::vector<QuadForm> reduced_forms(const Int& d) {
  if (!is_fundamental_discriminant(d))
    throw std::invalid_argument("reduced_forms: need a negative fundamental discriminant");
  std::vector<QuadForm> out;
  for (Int a = 1; 3 * a * a <= -d; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      Int c4 = b * b - d;
      if (!mpz_divisible_p(c4.get_mpz_t(), Int(4 * a).get_mpz_t())) continue;
      Int c = c4 / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      Int cont = gcd(gcd(a, abs(b)), c);
      if (cont != 1) continue;
      out.push_back(QuadForm{a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

AbelianGroupShape class_group_imaginary_quadratic(const Int& d) {
  std::vector<QuadForm> forms = reduced_forms(d);
  const int h = static_cast<int>(forms.size());
  auto index_of = [&](const QuadForm& f) {
    auto it = std::lower_bound(forms.begin(), forms.end(), f);
    if (it == forms.end() || !(*it == f))
      throw std::logic_error("class group: composition left the reduced list");
    return static_cast<int>(it - forms.begin());
  };
  const int id = index_of(reduce_form(principal_form(d)));
  // presentation of the abelian group from its multiplication table
  IntMat rel = int_zero(h, static_cast<index_t>(h) * h + 1);
  index_t col = 0;
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      int k = index_of(compose_forms(forms[static_cast<size_t>(i)], forms[static_cast<size_t>(j)]));
      rel(i, col) += 1;
      rel(j, col) += 1;
      rel(k, col) -= 1;
      ++col;
    }
  rel(id, col) = 1;
  return cokernel_shape(rel);
}

}  // namespace torlat
