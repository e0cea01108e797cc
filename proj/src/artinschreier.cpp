#include "torlat/artinschreier.hpp"

#include <algorithm>

namespace torlat {

WpMembership wp_image_member(long p, const FpPoly& a, int degree_bound) {
  if (a.p != p) throw std::invalid_argument("wp_image_member: characteristic mismatch");
  if (a.degree() > 2 * degree_bound)
    throw std::invalid_argument("wp_image_member: degree exceeds 2 * degree_bound");
  WpReduction r = wp_reduce(a);
  WpMembership out;
  out.member = r.canonical.is_zero();
  if (out.member) out.witness = r.witness;
  return out;
}

std::vector<ASClass> enumerate_as_classes(long p, int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("enumerate_as_classes: max_degree >= 1");
  if (!is_prime_small(p)) throw std::invalid_argument("enumerate_as_classes: p must be prime");
  std::vector<int> allowed{0};
  for (int e = 1; e <= max_degree; ++e)
    if (e % static_cast<int>(p) != 0) allowed.push_back(e);
  std::vector<ASClass> out;
  std::vector<long> digits(allowed.size(), 0);
  for (;;) {
    // next assignment (skip the all-zero class)
    size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == p) {
      digits[pos] = 0;
      ++pos;
    }
    if (pos == digits.size()) break;
    std::vector<long> coeffs(static_cast<size_t>(max_degree) + 1, 0);
    for (size_t i = 0; i < allowed.size(); ++i)
      coeffs[static_cast<size_t>(allowed[i])] = digits[i];
    out.push_back(ASClass{p, FpPoly::from_coeffs(p, std::move(coeffs))});
  }
  std::sort(out.begin(), out.end(),
            [](const ASClass& x, const ASClass& y) { return x.representative < y.representative; });
  return out;
}

ASCertificate as_unramified_certificate(long p, const FpPoly& a) {
  WpReduction r = wp_reduce(a);
  if (r.canonical.is_zero())
    throw std::invalid_argument(
        "as_unramified_certificate: class is trivial (element lies in the wp image)");
  ASCertificate c;
  c.p = p;
  c.a = r.canonical;
  c.defining_polynomial = "x^" + std::to_string(p) + "-x-(" + r.canonical.to_string() + ")";
  // d/dx (x^p - x - a) = p x^{p-1} - 1 = -1 in characteristic p
  c.derivative_constant = p - 1;
  c.derivative_is_unit = true;
  return c;
}

ASNormTorus as_norm_torus(long p, const FpPoly& a) {
  ASNormTorus out;
  out.certificate = as_unramified_certificate(p, a);
  out.datum = make_artin_schreier_datum(p, out.certificate.a);
  GroupTable cp = GroupTable::cyclic(static_cast<int>(p));
  out.torus = with_provenance(
      make_norm_one_torus(cp, {cp.identity}),
      "norm_one(C" + std::to_string(p) + "; artin_schreier a=" + out.certificate.a.to_string() + ")");
  return out;
}

}  // namespace torlat
