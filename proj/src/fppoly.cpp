#include "torlat/fppoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace torlat {

namespace {

long mod_norm(long x, long p) {
  long r = x % p;
  return r < 0 ? r + p : r;
}

void trim(std::vector<long>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

void check_same_field(const FpPoly& a, const FpPoly& b) {
  if (a.p != b.p) throw std::invalid_argument("FpPoly: mixed characteristics");
}

}  // namespace

FpPoly FpPoly::constant(long p, long c) {
  FpPoly f{p, {mod_norm(c, p)}};
  trim(f.coeffs);
  return f;
}

FpPoly FpPoly::variable(long p) { return FpPoly{p, {0, 1}}; }

FpPoly FpPoly::from_coeffs(long p, std::vector<long> cs) {
  if (p < 2 || !is_prime_small(p)) throw std::invalid_argument("FpPoly: p must be a small prime");
  for (auto& c : cs) c = mod_norm(c, p);
  trim(cs);
  return FpPoly{p, std::move(cs)};
}

FpPoly FpPoly::monic_part() const {
  if (is_zero() || is_monic()) return *this;
  return fp_scale(*this, fp_inv_scalar(leading(), p));
}

long FpPoly::eval(long x) const {
  long r = 0;
  for (size_t i = coeffs.size(); i-- > 0;) r = mod_norm(r * x + coeffs[i], p);
  return r;
}

FpPoly FpPoly::derivative() const {
  std::vector<long> d;
  for (size_t i = 1; i < coeffs.size(); ++i)
    d.push_back(mod_norm(coeffs[i] * static_cast<long>(i % static_cast<size_t>(p)), p));
  trim(d);
  return FpPoly{p, std::move(d)};
}

std::string FpPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    long c = coeff(i);
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i >= 1) s += (i == 1) ? "t" : ("t^" + std::to_string(i));
  }
  return s;
}

bool FpPoly::operator<(const FpPoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (int i = degree(); i >= 0; --i)
    if (coeff(i) != o.coeff(i)) return coeff(i) < o.coeff(i);
  return false;
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
  check_same_field(a, b);
  std::vector<long> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod_norm(a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i)), a.p);
  trim(c);
  return FpPoly{a.p, std::move(c)};
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
  check_same_field(a, b);
  std::vector<long> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod_norm(a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i)), a.p);
  trim(c);
  return FpPoly{a.p, std::move(c)};
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  check_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.p);
  std::vector<long> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j)
      c[i + j] = mod_norm(c[i + j] + a.coeffs[i] * b.coeffs[j], a.p);
  trim(c);
  return FpPoly{a.p, std::move(c)};
}

FpPoly fp_scale(const FpPoly& a, long c) {
  std::vector<long> out(a.coeffs.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = mod_norm(a.coeffs[i] * mod_norm(c, a.p), a.p);
  trim(out);
  return FpPoly{a.p, std::move(out)};
}

std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b) {
  check_same_field(a, b);
  if (b.is_zero()) throw std::invalid_argument("fp_divmod: division by zero");
  FpPoly r = a;
  std::vector<long> q(a.coeffs.size() > b.coeffs.size() ? a.coeffs.size() - b.coeffs.size() + 1 : 1,
                      0);
  long binv = fp_inv_scalar(b.leading(), a.p);
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    long f = mod_norm(r.leading() * binv, a.p);
    q[static_cast<size_t>(shift)] = f;
    for (int i = 0; i <= b.degree(); ++i) {
      long& rc = r.coeffs[static_cast<size_t>(i + shift)];
      rc = mod_norm(rc - f * b.coeff(i), a.p);
    }
    trim(r.coeffs);
  }
  trim(q);
  return {FpPoly{a.p, std::move(q)}, std::move(r)};
}

FpPoly fp_gcd(const FpPoly& a, const FpPoly& b) {
  FpPoly x = a, y = b;
  while (!y.is_zero()) {
    FpPoly r = fp_divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic_part();
}

FpPoly fp_pow(const FpPoly& a, unsigned long e) {
  FpPoly r = FpPoly::one(a.p);
  FpPoly base = a;
  while (e) {
    if (e & 1) r = fp_mul(r, base);
    base = fp_mul(base, base);
    e >>= 1;
  }
  return r;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f) {
  return fp_divmod(fp_mul(a, b), f).second;
}

FpPoly fp_powmod(const FpPoly& a, const Int& e, const FpPoly& f) {
  if (e < 0) return fp_powmod(fp_invmod(a, f), Int(-e), f);
  FpPoly r = FpPoly::one(a.p);
  FpPoly base = fp_divmod(a, f).second;
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (size_t i = bits; i-- > 0;) {
    r = fp_mulmod(r, r, f);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = fp_mulmod(r, base, f);
  }
  return r;
}

FpPoly fp_invmod(const FpPoly& a, const FpPoly& f) {
  // extended euclid
  FpPoly r0 = f, r1 = fp_divmod(a, f).second;
  FpPoly s0 = FpPoly::zero(a.p), s1 = FpPoly::one(a.p);
  while (!r1.is_zero()) {
    auto [q, r2] = fp_divmod(r0, r1);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0) throw std::invalid_argument("fp_invmod: element not invertible");
  return fp_scale(s0, fp_inv_scalar(r0.coeff(0), a.p));
}

long fp_inv_scalar(long a, long p) {
  a = mod_norm(a, p);
  if (a == 0) throw std::invalid_argument("fp_inv_scalar: zero");
  long t = 0, newt = 1, r = p, newr = a;
  while (newr != 0) {
    long q = r / newr;
    long t2 = t - q * newt;
    t = newt;
    newt = t2;
    long r2 = r - q * newr;
    r = newr;
    newr = r2;
  }
  return mod_norm(t, p);
}

bool is_prime_small(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long least_primitive_root(long p) {
  if (p == 2) return 1;
  std::vector<long> prime_factors;
  long m = p - 1;
  for (long d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      prime_factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) prime_factors.push_back(m);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long q : prime_factors) {
      long e = (p - 1) / q;
      long r = 1, base = g;
      while (e) {
        if (e & 1) r = mod_norm(r * base, p);
        base = mod_norm(base * base, p);
        e >>= 1;
      }
      if (r == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("least_primitive_root: none found");
}

namespace {

std::vector<FpPoly> enumerate_monics(long p, int degree) {
  std::vector<FpPoly> out;
  std::vector<long> c(static_cast<size_t>(degree) + 1, 0);
  c[static_cast<size_t>(degree)] = 1;
  for (;;) {
    FpPoly f{p, c};
    trim(f.coeffs);
    out.push_back(f);
    int i = 0;
    while (i < degree && ++c[static_cast<size_t>(i)] == p) {
      c[static_cast<size_t>(i)] = 0;
      ++i;
    }
    if (i == degree) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::map<std::pair<long, int>, std::vector<FpPoly>>& irr_cache() {
  static std::map<std::pair<long, int>, std::vector<FpPoly>> cache;
  return cache;
}
std::mutex& irr_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

bool fp_is_irreducible(const FpPoly& f) {
  if (f.degree() < 1) return false;
  FpPoly g = f.monic_part();
  if (g.degree() == 1) return true;
  for (int d = 1; 2 * d <= g.degree(); ++d)
    for (const FpPoly& q : monic_irreducibles(f.p, d))
      if (fp_divmod(g, q).second.is_zero()) return false;
  return true;
}

const std::vector<FpPoly>& monic_irreducibles(long p, int degree) {
  std::lock_guard<std::mutex> lock(irr_mutex());
  if (degree < 1) {
    static const std::vector<FpPoly> empty;
    return empty;
  }
  for (int d = 1; d <= degree; ++d) {
    auto key = std::make_pair(p, d);
    if (irr_cache().count(key)) continue;
    std::vector<FpPoly> out;
    for (const FpPoly& f : enumerate_monics(p, d)) {
      bool irred = true;
      for (int dd = 1; 2 * dd <= d && irred; ++dd)
        for (const FpPoly& q : irr_cache().at(std::make_pair(p, dd)))
          if (fp_divmod(f, q).second.is_zero()) {
            irred = false;
            break;
          }
      if (irred) out.push_back(f);
    }
    irr_cache().emplace(key, std::move(out));
  }
  return irr_cache().at(std::make_pair(p, degree));
}

int FpFactorization::total_degree() const {
  int d = 0;
  for (const auto& [f, e] : factors) d += f.degree() * e;
  return d;
}

FpFactorization fp_factor(const FpPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("fp_factor: zero polynomial");
  FpFactorization out;
  out.p = f.p;
  out.unit = f.leading();
  FpPoly rest = f.monic_part();
  for (int d = 1; rest.degree() >= 1 && 2 * d <= rest.degree(); ++d) {
    for (const FpPoly& q : monic_irreducibles(f.p, d)) {
      if (rest.degree() < 2 * d) break;
      int e = 0;
      for (;;) {
        auto [quo, rem] = fp_divmod(rest, q);
        if (!rem.is_zero()) break;
        rest = quo;
        ++e;
      }
      if (e > 0) out.factors.emplace_back(q, e);
    }
  }
  if (rest.degree() >= 1) out.factors.emplace_back(rest, 1);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

FpPoly wp(const FpPoly& g) {
  // g^p = g(t^p) over F_p
  std::vector<long> frob(static_cast<size_t>(std::max(0, g.degree()) * g.p) + 1, 0);
  for (int i = 0; i <= g.degree(); ++i)
    frob[static_cast<size_t>(i) * static_cast<size_t>(g.p)] = g.coeff(i);
  FpPoly gp = FpPoly::from_coeffs(g.p, std::move(frob));
  return fp_sub(gp, g);
}

WpReduction wp_reduce(const FpPoly& a) {
  WpReduction r;
  r.canonical = a;
  r.witness = FpPoly::zero(a.p);
  const long p = a.p;
  for (;;) {
    int bad = -1;
    for (int i = r.canonical.degree(); i >= 1; --i)
      if (i % static_cast<int>(p) == 0 && r.canonical.coeff(i) != 0) {
        bad = i;
        break;
      }
    if (bad < 0) break;
    // c t^{pk} = wp(c t^k) + c t^k over F_p (Frobenius fixes constants)
    long c = r.canonical.coeff(bad);
    std::vector<long> mono(static_cast<size_t>(bad / p) + 1, 0);
    mono[static_cast<size_t>(bad / p)] = c;
    FpPoly g = FpPoly::from_coeffs(p, std::move(mono));
    r.canonical = fp_sub(r.canonical, wp(g));
    r.witness = fp_add(r.witness, g);
  }
  return r;
}

}  // namespace torlat
