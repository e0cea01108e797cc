#include "torlat/places.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace torlat {

GlobalFieldModel GlobalFieldModel::fp_t(long p) {
  if (!is_prime_small(p)) throw std::invalid_argument("fp_t: p must be prime");
  return {Kind::RationalFunctionField, p};
}

std::string GlobalFieldModel::to_string() const {
  return kind == Kind::Rationals ? "Q" : ("F" + std::to_string(p) + "(t)");
}

Place Place::rational_prime(Int q) {
  if (q < 2 || mpz_probab_prime_p(q.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("Place: not a prime");
  Place v;
  v.kind = Kind::RationalPrime;
  v.prime = std::move(q);
  return v;
}

Place Place::finite_poly(FpPoly f) {
  if (!f.is_monic() || !fp_is_irreducible(f))
    throw std::invalid_argument("Place: polynomial is not monic irreducible");
  Place v;
  v.kind = Kind::FinitePoly;
  v.poly = std::move(f);
  return v;
}

Place Place::infinity() {
  Place v;
  v.kind = Kind::Infinity;
  return v;
}

int Place::degree() const {
  switch (kind) {
    case Kind::FinitePoly:
      return poly.degree();
    default:
      return 1;
  }
}

std::string Place::to_string() const {
  switch (kind) {
    case Kind::RationalPrime:
      return prime.get_str();
    case Kind::FinitePoly:
      return "(" + poly.to_string() + ")";
    default:
      return "infinity";
  }
}

bool Place::operator==(const Place& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::RationalPrime) return prime == o.prime;
  if (kind == Kind::FinitePoly) return poly == o.poly;
  return true;
}

bool Place::operator<(const Place& o) const {
  if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
  if (kind == Kind::RationalPrime) return prime < o.prime;
  if (kind == Kind::FinitePoly) return poly < o.poly;
  return false;
}

std::vector<std::pair<Int, int>> factor_int(const Int& n) {
  if (n == 0) throw std::invalid_argument("factor_int: zero");
  Int m = abs(n);
  std::vector<std::pair<Int, int>> out;
  for (Int d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
    if (!mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) continue;
    int e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), d.get_mpz_t());
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

Int squarefree_part(const Int& n) {
  Int s = n < 0 ? -1 : 1;
  for (const auto& [q, e] : factor_int(n))
    if (e % 2 == 1) s *= q;
  return s;
}

Int fundamental_discriminant(const Int& d) {
  Int m = squarefree_part(d);
  if (m == 1) throw std::invalid_argument("fundamental_discriminant: square input");
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), m.get_mpz_t(), 4);
  return (r == 1) ? m : Int(4 * m);
}

std::vector<Place> support(const GlobalFieldModel& model, const Int& num, const Int& den) {
  if (model.kind != GlobalFieldModel::Kind::Rationals)
    throw std::invalid_argument("support: integer fraction over a function field model");
  if (num == 0 || den == 0) throw std::invalid_argument("support: zero element");
  std::set<Place> s;
  for (const auto& [q, e] : factor_int(num))
    if (ord_at_q(num, den, q) != 0) s.insert(Place::rational_prime(q));
  for (const auto& [q, e] : factor_int(den))
    if (ord_at_q(num, den, q) != 0) s.insert(Place::rational_prime(q));
  return std::vector<Place>(s.begin(), s.end());
}

std::vector<Place> support(const GlobalFieldModel& model, const FpPoly& num, const FpPoly& den) {
  if (model.kind != GlobalFieldModel::Kind::RationalFunctionField)
    throw std::invalid_argument("support: polynomial fraction over Q");
  if (num.is_zero() || den.is_zero()) throw std::invalid_argument("support: zero element");
  if (num.p != model.p || den.p != model.p)
    throw std::invalid_argument("support: characteristic mismatch");
  std::set<Place> s;
  for (const auto& [f, e] : fp_factor(num).factors) {
    Place v = Place::finite_poly(f);
    if (ord_at(model, num, den, v) != 0) s.insert(v);
  }
  for (const auto& [f, e] : fp_factor(den).factors) {
    Place v = Place::finite_poly(f);
    if (ord_at(model, num, den, v) != 0) s.insert(v);
  }
  if (num.degree() != den.degree()) s.insert(Place::infinity());
  return std::vector<Place>(s.begin(), s.end());
}

namespace {

long poly_ord(const FpPoly& f, const FpPoly& q) {
  long e = 0;
  FpPoly rest = f;
  for (;;) {
    auto [quo, rem] = fp_divmod(rest, q);
    if (!rem.is_zero()) return e;
    rest = quo;
    ++e;
  }
}

}  // namespace

long ord_at(const GlobalFieldModel& model, const FpPoly& num, const FpPoly& den, const Place& v) {
  if (model.kind != GlobalFieldModel::Kind::RationalFunctionField)
    throw std::invalid_argument("ord_at: model mismatch");
  if (num.is_zero() || den.is_zero()) throw std::invalid_argument("ord_at: zero element");
  switch (v.kind) {
    case Place::Kind::Infinity:
      return -(num.degree() - den.degree());
    case Place::Kind::FinitePoly:
      return poly_ord(num, v.poly) - poly_ord(den, v.poly);
    default:
      throw std::invalid_argument("ord_at: rational prime against a function field element");
  }
}

long ord_at_q(const Int& num, const Int& den, const Int& q) {
  auto val = [&](const Int& x) {
    long e = 0;
    Int m = abs(x);
    while (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), q.get_mpz_t());
      ++e;
    }
    return e;
  };
  return val(num) - val(den);
}

std::vector<Place> places_up_to(const GlobalFieldModel& model, unsigned long bound) {
  std::vector<Place> out;
  if (model.kind == GlobalFieldModel::Kind::Rationals) {
    for (unsigned long n = 2; n <= bound; ++n)
      if (is_prime_small(static_cast<long>(n))) out.push_back(Place::rational_prime(Int(n)));
  } else {
    for (int d = 1; d <= static_cast<int>(bound); ++d)
      for (const FpPoly& f : monic_irreducibles(model.p, d)) out.push_back(Place::finite_poly(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// splitting data

namespace {

GroupTable elementary_abelian_2(int k) {
  const int n = 1 << k;
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<size_t>(a)][static_cast<size_t>(b)] = a ^ b;
  return GroupTable::from_table(std::move(t));
}

// fundamental discriminant of the character indexed by the subset mask
Int subset_discriminant(const std::vector<Int>& discs, unsigned mask) {
  Int prod = 1;
  for (size_t i = 0; i < discs.size(); ++i)
    if (mask & (1u << i)) prod *= discs[i];
  return fundamental_discriminant(prod);
}

int kronecker(const Int& d, const Int& q) { return mpz_kronecker(d.get_mpz_t(), q.get_mpz_t()); }

}  // namespace

std::string SplittingDatum::describe() const {
  switch (kind) {
    case Kind::Multiquadratic: {
      std::string s = "Q(";
      for (size_t i = 0; i < discriminants.size(); ++i) {
        if (i) s += ",";
        s += "sqrt(" + discriminants[i].get_str() + ")";
      }
      return s + ")";
    }
    case Kind::ArtinSchreier:
      return "F" + std::to_string(model.p) + "(t)[x]/(x^" + std::to_string(model.p) + "-x-(" +
             as_element.to_string() + "))";
    default:
      return "F" + std::to_string(model.p) + "(t), degree-" + std::to_string(kummer_n) +
             " Kummer of (" + kummer_num.to_string() + ")/(" + kummer_den.to_string() + ")";
  }
}

SplittingDatum make_multiquadratic_datum(const std::vector<Int>& ds) {
  if (ds.size() > 10)
    throw std::invalid_argument("multiquadratic datum: at most 10 discriminants");
  SplittingDatum out;
  out.model = GlobalFieldModel::rationals();
  out.kind = SplittingDatum::Kind::Multiquadratic;
  for (const Int& d : ds) out.discriminants.push_back(fundamental_discriminant(d));
  // independence modulo squares: all 2^k subset products must be nonsquare
  // except the empty one
  const unsigned total = 1u << ds.size();
  for (unsigned mask = 1; mask < total; ++mask) {
    Int prod = 1;
    for (size_t i = 0; i < ds.size(); ++i)
      if (mask & (1u << i)) prod *= out.discriminants[i];
    if (squarefree_part(prod) == 1)
      throw std::invalid_argument("multiquadratic datum: discriminants are not independent");
  }
  out.group = elementary_abelian_2(static_cast<int>(ds.size()));
  // ramified places: primes dividing some character discriminant
  std::set<Place> ram;
  for (unsigned mask = 1; mask < total; ++mask) {
    Int dS = subset_discriminant(out.discriminants, mask);
    for (const auto& [q, e] : factor_int(dS)) ram.insert(Place::rational_prime(q));
  }
  out.ramified_places.assign(ram.begin(), ram.end());
  return out;
}

SplittingDatum make_artin_schreier_datum(long p, const FpPoly& a) {
  if (!is_prime_small(p)) throw std::invalid_argument("artin-schreier datum: p must be prime");
  if (a.p != p) throw std::invalid_argument("artin-schreier datum: characteristic mismatch");
  WpReduction red = wp_reduce(a);
  if (red.canonical.is_zero())
    throw std::invalid_argument("artin-schreier datum: element lies in the image of x^p - x");
  SplittingDatum out;
  out.model = GlobalFieldModel::fp_t(p);
  out.kind = SplittingDatum::Kind::ArtinSchreier;
  out.as_element = red.canonical;
  out.group = GroupTable::cyclic(static_cast<int>(p));
  // unramified at every affine place: f_a' = -1
  return out;
}

SplittingDatum make_kummer_datum(long p, long n, const FpPoly& num, const FpPoly& den) {
  if (!is_prime_small(p)) throw std::invalid_argument("kummer datum: p must be prime");
  if (n < 2 || (p - 1) % n != 0)
    throw std::invalid_argument("kummer datum: need n >= 2 dividing p-1");
  if (num.is_zero() || den.is_zero()) throw std::invalid_argument("kummer datum: zero radicand");
  SplittingDatum out;
  out.model = GlobalFieldModel::fp_t(p);
  out.kind = SplittingDatum::Kind::Kummer;
  out.kummer_n = n;
  out.kummer_num = num;
  out.kummer_den = den;
  out.group = GroupTable::cyclic(static_cast<int>(n));
  std::set<Place> ram;
  for (const Place& v : support(out.model, num, den)) {
    if (v.kind == Place::Kind::Infinity) continue;
    if (ord_at(out.model, num, den, v) % n != 0) ram.insert(v);
  }
  out.ramified_places.assign(ram.begin(), ram.end());
  return out;
}

namespace {

bool place_in(const std::vector<Place>& list, const Place& v) {
  return std::find(list.begin(), list.end(), v) != list.end();
}

int mq_frobenius(const SplittingDatum& d, const Int& q) {
  int mask = 0;
  for (size_t i = 0; i < d.discriminants.size(); ++i)
    if (kronecker(d.discriminants[i], q) == -1) mask |= (1 << i);
  return mask;
}

// residue of the radicand-unit at an affine place, valued in F_q = F_p[t]/f
FpPoly unit_residue(const FpPoly& num, const FpPoly& den, const FpPoly& f) {
  long a = poly_ord(num, f);
  long b = poly_ord(den, f);
  FpPoly nn = num, dd = den;
  for (long i = 0; i < a; ++i) nn = fp_divmod(nn, f).first;
  for (long i = 0; i < b; ++i) dd = fp_divmod(dd, f).first;
  FpPoly nr = fp_divmod(nn, f).second;
  FpPoly dr = fp_divmod(dd, f).second;
  return fp_mulmod(nr, fp_invmod(dr, f), f);
}

int kummer_symbol(const SplittingDatum& d, const FpPoly& f) {
  const long p = d.model.p;
  const long n = d.kummer_n;
  FpPoly u = unit_residue(d.kummer_num, d.kummer_den, f);
  Int q = 1;
  for (int i = 0; i < f.degree(); ++i) q *= p;
  Int e = (q - 1) / n;
  FpPoly s = fp_powmod(u, e, f);
  if (s.degree() > 0) throw std::logic_error("kummer symbol: value not in the prime field");
  long sval = s.is_zero() ? 0 : s.coeff(0);
  if (sval == 0) throw std::invalid_argument("kummer symbol: radicand not a unit at the place");
  long g = least_primitive_root(p);
  long zeta = 1;
  {
    long e2 = (p - 1) / n;
    long base = g;
    while (e2) {
      if (e2 & 1) zeta = (zeta * base) % p;
      base = (base * base) % p;
      e2 >>= 1;
    }
  }
  long acc = 1;
  for (int k = 0; k < n; ++k) {
    if (acc == sval) return k;
    acc = (acc * zeta) % p;
  }
  throw std::logic_error("kummer symbol: value is not an n-th root of unity");
}

}  // namespace

int frobenius(const SplittingDatum& d, const Place& v) {
  if (place_in(d.ramified_places, v))
    throw std::invalid_argument("frobenius: place is ramified; use inertia/decomposition data");
  switch (d.kind) {
    case SplittingDatum::Kind::Multiquadratic:
      if (v.kind != Place::Kind::RationalPrime)
        throw std::invalid_argument("frobenius: expected a rational prime");
      return mq_frobenius(d, v.prime);
    case SplittingDatum::Kind::ArtinSchreier: {
      if (v.kind != Place::Kind::FinitePoly)
        throw std::invalid_argument(
            "frobenius: artin-schreier data lives over the affine line only");
      // trace of a(theta) down to F_p; counts roots of x^p - x - a in the
      // residue field (split completely iff the trace vanishes)
      const long p = d.model.p;
      const FpPoly& f = v.poly;
      FpPoly abar = fp_divmod(d.as_element, f).second;
      FpPoly acc = abar;
      FpPoly frob = abar;
      for (int i = 1; i < f.degree(); ++i) {
        frob = fp_powmod(frob, Int(p), f);
        acc = fp_add(acc, frob);
      }
      if (acc.degree() > 0) throw std::logic_error("frobenius: trace not in the prime field");
      return static_cast<int>(acc.is_zero() ? 0 : acc.coeff(0));
    }
    default:
      if (v.kind != Place::Kind::FinitePoly)
        throw std::invalid_argument("frobenius: kummer data over affine places only");
      return kummer_symbol(d, v.poly);
  }
}

Subgroup inertia(const SplittingDatum& d, const Place& v) {
  switch (d.kind) {
    case SplittingDatum::Kind::Multiquadratic: {
      if (v.kind != Place::Kind::RationalPrime)
        throw std::invalid_argument("inertia: expected a rational prime");
      if (!place_in(d.ramified_places, v)) return {d.group.identity};
      const unsigned k = static_cast<unsigned>(d.discriminants.size());
      Subgroup out;
      for (int s = 0; s < d.group.n; ++s) {
        bool fixed_by_unramified = true;
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
          Int dS = subset_discriminant(d.discriminants, mask);
          if (mpz_divisible_p(dS.get_mpz_t(), v.prime.get_mpz_t())) continue;  // ramified char
          int pairing = __builtin_popcount(static_cast<unsigned>(s) & mask) % 2;
          if (pairing != 0) {
            fixed_by_unramified = false;
            break;
          }
        }
        if (fixed_by_unramified) out.push_back(s);
      }
      return out;
    }
    case SplittingDatum::Kind::ArtinSchreier:
      if (v.kind == Place::Kind::Infinity)
        throw std::invalid_argument("inertia: the infinite place is outside this datum's set");
      return {d.group.identity};
    default: {
      if (v.kind != Place::Kind::FinitePoly)
        throw std::invalid_argument("inertia: kummer data over affine places only");
      if (!place_in(d.ramified_places, v)) return {d.group.identity};
      long a = ord_at(d.model, d.kummer_num, d.kummer_den, v);
      long n = d.kummer_n;
      long e = n / std::gcd(n, ((a % n) + n) % n);
      Subgroup out;
      for (long s = 0; s < n; s += n / e) out.push_back(static_cast<int>(s));
      std::sort(out.begin(), out.end());
      return out;
    }
  }
}

std::optional<Subgroup> decomposition_subgroup(const SplittingDatum& d, const Place& v) {
  if (!place_in(d.ramified_places, v)) return subgroup_closure(d.group, {frobenius(d, v)});
  if (d.kind == SplittingDatum::Kind::Multiquadratic) {
    // Frobenius on the maximal subextension unramified at v: any group
    // element pairing correctly with every unramified character
    const unsigned k = static_cast<unsigned>(d.discriminants.size());
    std::vector<std::pair<unsigned, int>> constraints;  // (mask, required sign)
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      Int dS = subset_discriminant(d.discriminants, mask);
      if (mpz_divisible_p(dS.get_mpz_t(), v.prime.get_mpz_t())) continue;
      constraints.emplace_back(mask, kronecker(dS, v.prime));
    }
    for (int s = 0; s < d.group.n; ++s) {
      bool ok = true;
      for (const auto& [mask, sign] : constraints) {
        int pairing = (__builtin_popcount(static_cast<unsigned>(s) & mask) % 2) ? -1 : 1;
        if (pairing != sign) {
          ok = false;
          break;
        }
      }
      if (ok) {
        Subgroup gens = inertia(d, v);
        gens.push_back(s);
        return subgroup_closure(d.group, gens);
      }
    }
    return std::nullopt;  // inconsistent symbols would be a bug
  }
  // Artin-Schreier data is unramified everywhere on the affine line; Kummer
  // decomposition data at ramified places is not derived from the datum.
  if (d.kind == SplittingDatum::Kind::ArtinSchreier)
    return subgroup_closure(d.group, {frobenius(d, v)});
  return std::nullopt;
}

RealizedCyclics realized_cyclics(const SplittingDatum& d, unsigned long sample_bound) {
  if (sample_bound < 2) throw std::invalid_argument("realized_cyclics: sample_bound >= 2");
  RealizedCyclics out;
  std::map<Subgroup, Place> found;
  for (const Place& v : places_up_to(d.model, sample_bound)) {
    Subgroup c;
    if (!place_in(d.ramified_places, v)) {
      c = subgroup_closure(d.group, {frobenius(d, v)});
    } else {
      auto dv = decomposition_subgroup(d, v);
      if (!dv) continue;
      // record only cyclic decomposition data here
      GroupTable sub = subgroup_table(d.group, *dv);
      bool cyclic = false;
      for (int x = 0; x < sub.n; ++x)
        if (sub.order_of(x) == sub.n) cyclic = true;
      if (!cyclic) continue;
      c = *dv;
    }
    if (!found.count(c)) found.emplace(c, v);
  }
  for (const auto& [sub, witness] : found) out.realized.emplace_back(sub, witness);
  std::set<Subgroup> have;
  for (const auto& [sub, witness] : out.realized) have.insert(sub);
  out.full_coverage = true;
  for (const Subgroup& c : cyclic_subgroups(d.group))
    if (!have.count(c)) out.full_coverage = false;
  return out;
}

}  // namespace torlat
