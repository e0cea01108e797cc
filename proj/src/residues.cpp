#include "torlat/residues.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace torlat {

long FactoredElement::ord(const Place& v) const {
  if (v.kind == Place::Kind::Infinity) {
    if (model.kind != GlobalFieldModel::Kind::RationalFunctionField)
      throw std::invalid_argument("ord: infinite place over Q");
    return -total_degree();
  }
  for (const auto& [w, e] : factors)
    if (w == v) return e;
  return 0;
}

long FactoredElement::total_degree() const {
  long d = 0;
  for (const auto& [w, e] : factors) d += e * w.degree();
  return d;
}

std::vector<Place> FactoredElement::support_places() const {
  std::vector<Place> out;
  for (const auto& [w, e] : factors)
    if (e != 0) out.push_back(w);
  if (model.kind == GlobalFieldModel::Kind::RationalFunctionField && total_degree() != 0)
    out.push_back(Place::infinity());
  return out;
}

FactoredElement FactoredElement::from_fraction(const GlobalFieldModel& m, const FpPoly& num,
                                               const FpPoly& den) {
  if (m.kind != GlobalFieldModel::Kind::RationalFunctionField)
    throw std::invalid_argument("from_fraction: expected a function field model");
  if (num.is_zero() || den.is_zero()) throw std::invalid_argument("from_fraction: zero element");
  FactoredElement f;
  f.model = m;
  FpFactorization fn = fp_factor(num);
  FpFactorization fd = fp_factor(den);
  f.ff_constant = (fn.unit * fp_inv_scalar(fd.unit, m.p)) % m.p;
  std::map<FpPoly, long> exps;
  for (const auto& [q, e] : fn.factors) exps[q] += e;
  for (const auto& [q, e] : fd.factors) exps[q] -= e;
  for (const auto& [q, e] : exps)
    if (e != 0) f.factors.emplace_back(Place::finite_poly(q), e);
  return f;
}

FactoredElement FactoredElement::from_fraction_q(const Int& num, const Int& den) {
  if (num == 0 || den == 0) throw std::invalid_argument("from_fraction_q: zero element");
  FactoredElement f;
  f.model = GlobalFieldModel::rationals();
  f.q_sign = ((num < 0) != (den < 0)) ? -1 : 1;
  std::map<Int, long> exps;
  for (const auto& [q, e] : factor_int(num)) exps[q] += e;
  for (const auto& [q, e] : factor_int(den)) exps[q] -= e;
  for (const auto& [q, e] : exps)
    if (e != 0) f.factors.emplace_back(Place::rational_prime(q), e);
  return f;
}

SquareClass SquareClass::canonical() const {
  SquareClass out = *this;
  out.element.factors.clear();
  for (auto [w, e] : element.factors) {
    long r = ((e % n) + n) % n;
    if (r != 0) out.element.factors.emplace_back(w, r);
  }
  return out;
}

namespace {

void check_tame(const GlobalFieldModel& model, long n, const Place& v) {
  if (model.kind == GlobalFieldModel::Kind::RationalFunctionField) {
    if (n % model.p == 0)
      throw std::invalid_argument("residue: modulus shares the residue characteristic");
  } else {
    if (v.kind != Place::Kind::RationalPrime)
      throw std::invalid_argument("residue: place does not belong to Q");
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), Int(n).get_mpz_t(), v.prime.get_mpz_t());
    if (r == 0)
      throw std::invalid_argument("residue: modulus shares the residue characteristic");
  }
}

// discrete-log index of x in the cyclic group F_p^x (p a small prime)
long dlog_prime_field(long x, long p) {
  long g = least_primitive_root(p);
  long acc = 1;
  for (long k = 0; k < p - 1; ++k) {
    if (acc == ((x % p) + p) % p) return k;
    acc = (acc * g) % p;
  }
  throw std::invalid_argument("dlog: element not a unit");
}

// evaluation of the unit part of f at a finite function-field place
FpPoly unit_part_at(const FactoredElement& f, const FpPoly& fv) {
  const long p = f.model.p;
  FpPoly acc = FpPoly::constant(p, f.ff_constant);
  for (const auto& [w, e] : f.factors) {
    if (w.kind != Place::Kind::FinitePoly) continue;
    if (w.poly == fv) continue;
    FpPoly base = fp_divmod(w.poly, fv).second;
    FpPoly powed = fp_powmod(base, Int(std::abs(e)), fv);
    if (e < 0) powed = fp_invmod(powed, fv);
    acc = fp_mulmod(acc, powed, fv);
  }
  return acc;
}

// full discrete-log table of F_q^x = (F_p[t]/fv)^x; the residue fields in
// play are tiny, so one dense table per place is cheap and reused
struct DlogTable {
  long qm1 = 0;
  std::map<std::vector<long>, long> index;
};

const DlogTable& dlog_table(long p, const FpPoly& fv) {
  static std::map<std::pair<long, std::vector<long>>, DlogTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, fv.coeffs);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  DlogTable t;
  Int q = 1;
  for (int i = 0; i < fv.degree(); ++i) q *= p;
  t.qm1 = q.get_si() - 1;
  // deterministic generator search
  std::vector<long> prime_divisors;
  {
    long m = t.qm1;
    for (long d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        prime_divisors.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) prime_divisors.push_back(m);
  }
  FpPoly gen = FpPoly::one(p);
  for (long code = 1; t.qm1 > 1; ++code) {
    std::vector<long> cs;
    long c = code;
    for (int i = 0; i < fv.degree(); ++i) {
      cs.push_back(c % p);
      c /= p;
    }
    if (c != 0) throw std::logic_error("dlog_table: no generator found");
    FpPoly cand = FpPoly::from_coeffs(p, cs);
    if (cand.is_zero() || (cand.degree() == 0 && cand.coeff(0) == 1)) continue;
    bool primitive = true;
    for (long ell : prime_divisors) {
      FpPoly r = fp_powmod(cand, Int(t.qm1 / ell), fv);
      if (r.degree() == 0 && r.coeff(0) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = cand;
      break;
    }
  }
  FpPoly acc = FpPoly::one(p);
  for (long k = 0; k < t.qm1; ++k) {
    t.index[acc.coeffs] = k;
    acc = fp_mulmod(acc, gen, fv);
  }
  auto [pos, inserted] = cache.emplace(std::move(key), std::move(t));
  (void)inserted;
  return pos->second;
}

// generator-based index of a unit u in F_q = F_p[t]/fv, modulo n-th powers
ResidueClassValue classify_unit_ff(const FpPoly& u, const FpPoly& fv, long n) {
  const long p = u.p;
  const DlogTable& t = dlog_table(p, fv);
  long g = std::gcd(n, t.qm1);
  ResidueClassValue out;
  out.modulus = g;
  if (g == 1) return out;
  FpPoly target = fp_divmod(u, fv).second;
  auto it = t.index.find(target.coeffs);
  if (it == t.index.end()) throw std::invalid_argument("classify_unit_ff: not a unit");
  out.index = it->second % g;
  return out;
}

}  // namespace

long residue_deg1(const SquareClass& f, const Place& v) {
  check_tame(f.element.model, f.n, v);
  long o = f.element.ord(v);
  return ((o % f.n) + f.n) % f.n;
}

ResidueClassValue residue_deg2_tame(const SymbolClass& s, const Place& v) {
  if (!(s.a.model == s.b.model))
    throw std::invalid_argument("residue_deg2_tame: mixed models");
  check_tame(s.a.model, s.n, v);
  const long alpha = s.a.ord(v);
  const long beta = s.b.ord(v);
  if (s.a.model.kind == GlobalFieldModel::Kind::RationalFunctionField) {
    const long p = s.a.model.p;
    if (v.kind == Place::Kind::Infinity) {
      // unit parts at infinity are the constants (all finite factors monic)
      long ua = s.a.ff_constant % p;
      long ub = s.b.ff_constant % p;
      long val = ((alpha * beta) % 2 != 0) ? (p - 1) : 1;
      auto powm = [&](long base, long e) {
        base = ((base % p) + p) % p;
        if (e < 0) {
          base = fp_inv_scalar(base, p);
          e = -e;
        }
        long r = 1;
        while (e) {
          if (e & 1) r = (r * base) % p;
          base = (base * base) % p;
          e >>= 1;
        }
        return r;
      };
      val = (val * powm(ua, beta)) % p;
      val = (val * powm(ub, -alpha)) % p;
      long g = std::gcd(s.n, p - 1);
      ResidueClassValue out;
      out.modulus = g;
      if (g > 1) out.index = dlog_prime_field(val, p) % g;
      return out;
    }
    const FpPoly& fv = v.poly;
    FpPoly ua = unit_part_at(s.a, fv);
    FpPoly ub = unit_part_at(s.b, fv);
    FpPoly val = FpPoly::constant(p, ((alpha * beta) % 2 != 0) ? p - 1 : 1);
    FpPoly pa = fp_powmod(ua, Int(std::abs(beta)), fv);
    if (beta < 0) pa = fp_invmod(pa, fv);
    FpPoly pb = fp_powmod(ub, Int(std::abs(alpha)), fv);
    if (alpha > 0) pb = fp_invmod(pb, fv);
    val = fp_mulmod(fp_mulmod(val, pa, fv), pb, fv);
    return classify_unit_ff(val, fv, s.n);
  }
  // rationals: residue field F_q for the prime q (desk scale: q fits long)
  long q = v.prime.get_si();
  auto unit_mod = [&](const FactoredElement& f) {
    long acc = ((f.q_sign % q) + q) % q;
    for (const auto& [w, e] : f.factors) {
      if (w == v) continue;
      long base = static_cast<long>(mpz_fdiv_ui(w.prime.get_mpz_t(), static_cast<unsigned long>(q)));
      long ee = e;
      if (ee < 0) {
        base = fp_inv_scalar(base, q);
        ee = -ee;
      }
      long r = 1;
      while (ee) {
        if (ee & 1) r = (r * base) % q;
        base = (base * base) % q;
        ee >>= 1;
      }
      acc = (acc * r) % q;
    }
    return acc;
  };
  long ua = unit_mod(s.a), ub = unit_mod(s.b);
  long val = ((alpha * beta) % 2 != 0) ? q - 1 : 1;
  auto powm = [&](long base, long e) {
    if (e < 0) {
      base = fp_inv_scalar(base, q);
      e = -e;
    }
    long r = 1;
    base = ((base % q) + q) % q;
    while (e) {
      if (e & 1) r = (r * base) % q;
      base = (base * base) % q;
      e >>= 1;
    }
    return r;
  };
  val = (val * powm(ua, beta)) % q;
  val = (val * powm(ub, -alpha)) % q;
  long g = std::gcd(s.n, q - 1);
  ResidueClassValue out;
  out.modulus = g;
  if (g > 1) out.index = dlog_prime_field(val, q) % g;
  return out;
}

std::vector<SquareClass> unramified_h1(const GlobalFieldModel& model,
                                       const std::vector<Place>& removed, long n,
                                       int degree_bound) {
  if (model.kind != GlobalFieldModel::Kind::RationalFunctionField)
    throw std::invalid_argument("unramified_h1: function field models only");
  if (n % model.p == 0)
    throw std::invalid_argument("unramified_h1: modulus shares the characteristic");
  const long p = model.p;
  // constant representatives modulo n-th powers
  std::vector<long> const_reps;
  {
    long g0 = std::gcd(n, p - 1);
    long gen = least_primitive_root(p);
    long acc = 1;
    for (long k = 0; k < g0; ++k) {
      const_reps.push_back(acc);
      acc = (acc * gen) % p;
    }
    if (const_reps.empty()) const_reps.push_back(1);
  }
  // irreducibles with degree <= bound
  std::vector<FpPoly> irr;
  for (int d = 1; d <= degree_bound; ++d)
    for (const FpPoly& f : monic_irreducibles(p, d)) irr.push_back(f);
  std::vector<SquareClass> out;
  // depth-first enumeration of exponent assignments with the degree budget;
  // subtrees over budget are pruned immediately
  std::vector<std::pair<size_t, long>> chosen;  // (irreducible index, exponent)
  auto emit = [&]() {
    for (long c : const_reps) {
      SquareClass sc;
      sc.n = n;
      sc.element.model = model;
      sc.element.ff_constant = c;
      for (const auto& [i, e] : chosen)
        sc.element.factors.emplace_back(Place::finite_poly(irr[i]), e);
      bool unram = true;
      for (const Place& v : sc.element.support_places()) {
        if (std::find(removed.begin(), removed.end(), v) != removed.end()) continue;
        if (residue_deg1(sc, v) != 0) {
          unram = false;
          break;
        }
      }
      if (unram) out.push_back(sc);
    }
  };
  auto rec = [&](auto&& self, size_t pos, long budget) -> void {
    if (pos == irr.size()) {
      emit();
      return;
    }
    const long deg = irr[pos].degree();
    if (deg > budget) {
      // no later irreducible fits either (sorted by degree): stop assigning
      emit();
      return;
    }
    self(self, pos + 1, budget);  // exponent 0
    for (long e = 1; e < n && e * deg <= budget; ++e) {
      chosen.emplace_back(pos, e);
      self(self, pos + 1, budget - e * deg);
      chosen.pop_back();
    }
  };
  rec(rec, 0, degree_bound);
  return out;
}

SymbolCheck unramified_symbol_check(const SymbolClass& s, const std::vector<Place>& removed) {
  SymbolCheck out;
  out.twist_flag = s.n > 2;
  std::set<Place> candidates;
  for (const Place& v : s.a.support_places()) candidates.insert(v);
  for (const Place& v : s.b.support_places()) candidates.insert(v);
  if (s.a.model.kind == GlobalFieldModel::Kind::RationalFunctionField)
    candidates.insert(Place::infinity());
  for (const Place& v : candidates) {
    if (std::find(removed.begin(), removed.end(), v) != removed.end()) continue;
    if (!residue_deg2_tame(s, v).trivial()) out.ramified_at.push_back(v);
  }
  out.unramified = out.ramified_at.empty();
  return out;
}

}  // namespace torlat
