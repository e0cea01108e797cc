#include "doctest.h"
#include "torlat/zlattice.hpp"

using namespace torlat;

namespace {

IntMat m22(long a, long b, long c, long d) { return mat_from_rows(2, 2, {a, b, c, d}); }

void check_smith(const IntMat& a) {
  SmithDecomposition s = smith_normal_form(a);
  CHECK(mat_eq(s.U * a * s.V, s.D));
  CHECK(is_unimodular(s.U));
  CHECK(is_unimodular(s.V));
  // reconstruct A = U^-1 D V^-1 bit-exactly
  IntMat uinv = unimodular_inverse(s.U);
  IntMat vinv = unimodular_inverse(s.V);
  CHECK(mat_eq(uinv * s.D * vinv, a));
  auto d = s.diagonal();
  bool seen_zero = false;
  for (size_t k = 0; k < d.size(); ++k) {
    CHECK(d[k] >= 0);
    if (d[k] == 0) seen_zero = true;
    if (seen_zero) CHECK(d[k] == 0);
    if (k + 1 < d.size() && d[k] != 0 && d[k + 1] != 0)
      CHECK(mpz_divisible_p(d[k + 1].get_mpz_t(), d[k].get_mpz_t()));
  }
  // off-diagonal zero
  for (index_t i = 0; i < s.D.rows(); ++i)
    for (index_t j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D(i, j) == 0);
}

}  // namespace

TEST_CASE("smith normal form on pinned examples") {
  SmithDecomposition s = smith_normal_form(m22(2, 4, 6, 8));
  CHECK(s.D(0, 0) == 2);
  CHECK(s.D(1, 1) == 4);
  check_smith(m22(2, 4, 6, 8));

  SmithDecomposition id3 = smith_normal_form(int_identity(3));
  CHECK(mat_eq(id3.D, int_identity(3)));

  IntMat n1(1, 1);
  n1(0, 0) = 7;
  CHECK(smith_normal_form(n1).D(0, 0) == 7);

  IntMat neg(1, 1);
  neg(0, 0) = -7;
  CHECK(smith_normal_form(neg).D(0, 0) == 7);
}

TEST_CASE("smith normal form determinism and random reconstruction") {
  SplitMix64 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    index_t r = 1 + static_cast<index_t>(rng.below(4));
    index_t c = 1 + static_cast<index_t>(rng.below(4));
    IntMat a(r, c);
    for (index_t i = 0; i < r; ++i)
      for (index_t j = 0; j < c; ++j)
        a(i, j) = static_cast<long>(rng.below(21)) - 10;
    check_smith(a);
    // determinism: equal inputs give identical outputs
    SmithDecomposition s1 = smith_normal_form(a);
    SmithDecomposition s2 = smith_normal_form(a);
    CHECK(mat_eq(s1.U, s2.U));
    CHECK(mat_eq(s1.D, s2.D));
    CHECK(mat_eq(s1.V, s2.V));
  }
}

TEST_CASE("cokernel shapes") {
  IntMat muln(1, 1);
  muln(0, 0) = 6;
  AbelianGroupShape s = cokernel_shape(muln);
  CHECK(s.invariant_factors == std::vector<Int>{6});
  CHECK(s.free_rank == 0);

  AbelianGroupShape z2 = cokernel_shape(int_zero(2, 2));
  CHECK(z2.invariant_factors.empty());
  CHECK(z2.free_rank == 2);

  AbelianGroupShape f = cokernel_shape(m22(2, 4, 6, 8));
  CHECK(f.invariant_factors == std::vector<Int>({2, 4}));
  CHECK(f.free_rank == 0);
  CHECK(f.order() == 8);
}

TEST_CASE("cokernel order equals |det| for nonsingular square matrices") {
  SplitMix64 rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    index_t n = 1 + static_cast<index_t>(rng.below(4));
    IntMat a(n, n);
    for (index_t i = 0; i < n; ++i)
      for (index_t j = 0; j < n; ++j) a(i, j) = static_cast<long>(rng.below(13)) - 6;
    Int d = det_exact(a);
    if (d == 0) continue;
    CHECK(cokernel_shape(a).order() == abs(d));
  }
}

TEST_CASE("kernel basis spans the integer kernel") {
  IntMat a = mat_from_rows(2, 3, {1, 2, 3, 2, 4, 6});
  IntMat k = kernel_basis(a);
  CHECK(k.cols() == 2);
  CHECK(mat_is_zero(a * k));
  // saturation: (1, 1, -1) is in the kernel and must be an integer combination
  IntVec v(3);
  v << 1, 1, -1;
  CHECK(in_column_span(k, v));

  SplitMix64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    index_t r = 1 + static_cast<index_t>(rng.below(4));
    index_t c = 1 + static_cast<index_t>(rng.below(4));
    IntMat m(r, c);
    for (index_t i = 0; i < r; ++i)
      for (index_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng.below(9)) - 4;
    IntMat kb = kernel_basis(m);
    if (kb.cols() > 0) CHECK(mat_is_zero(m * kb));
    // rank-nullity over Q
    auto diag = smith_diagonal(m);
    index_t rank = 0;
    for (const auto& d : diag)
      if (d != 0) ++rank;
    CHECK(kb.cols() == c - rank);
  }
}

TEST_CASE("solve_columns finds exact integer solutions") {
  IntMat a = mat_from_rows(3, 2, {1, 0, 0, 2, 1, 2});
  IntMat b(3, 1);
  b << 3, 4, 7;
  auto y = solve_columns(a, b);
  REQUIRE(y.has_value());
  CHECK(mat_eq(a * *y, b));

  IntMat bad(3, 1);
  bad << 3, 1, 4;  // needs y1 = 1/2
  CHECK(!solve_columns(a, bad).has_value());
}

TEST_CASE("lattice quotient presentations") {
  IntMat g1 = int_identity(2);
  IntMat g2 = mat_from_rows(2, 2, {2, 0, 0, 4});
  QuotientPresentation q = lattice_quotient(g1, g2);
  CHECK(q.shape.invariant_factors == std::vector<Int>({2, 4}));
  CHECK(q.shape.free_rank == 0);
  CHECK(q.generators.cols() == 2);

  // Z^2 / span{(2,0)} = Z/2 x Z
  IntMat g3(2, 1);
  g3 << 2, 0;
  QuotientPresentation q2 = lattice_quotient(g1, g3);
  CHECK(q2.shape.invariant_factors == std::vector<Int>{2});
  CHECK(q2.shape.free_rank == 1);
}

TEST_CASE("matrix order") {
  CHECK(matrix_order(int_identity(3), 12).order == 1);
  OrderResult r4 = matrix_order(m22(0, -1, 1, 0), 12);
  CHECK(r4.finite);
  CHECK(r4.order == 4);
  OrderResult r3 = matrix_order(m22(0, -1, 1, -1), 12);
  CHECK(r3.finite);
  CHECK(r3.order == 3);
  OrderResult inf = matrix_order(m22(1, 1, 0, 1), 100);
  CHECK(!inf.finite);
  CHECK_THROWS_AS(matrix_order(int_zero(2, 3), 5), std::invalid_argument);

  // order result k satisfies A^k = I and A^j != I for j < k
  IntMat a = m22(0, -1, 1, -1);
  IntMat p = int_identity(2);
  for (unsigned long j = 1; j <= r3.order; ++j) {
    p = p * a;
    if (j < r3.order) CHECK(!mat_is_identity(p));
  }
  CHECK(mat_is_identity(p));
}

TEST_CASE("charpoly") {
  auto c = charpoly(m22(0, -1, 1, -1));  // x^2 + x + 1
  CHECK(c == std::vector<Int>({1, 1, 1}));
  auto c2 = charpoly(m22(2, 0, 0, 3));  // (x-2)(x-3) = x^2 - 5x + 6
  CHECK(c2 == std::vector<Int>({6, -5, 1}));
}

TEST_CASE("conjugacy search: identity pair") {
  ConjugacyResult r = glz_conjugate_search(int_identity(2), int_identity(2));
  CHECK(r.status == ConjugacyStatus::Found);
  CHECK(mat_is_identity(r.conjugator));
}

TEST_CASE("conjugacy search: the two reflections are separated mod 2") {
  IntMat a = m22(1, 0, 0, -1);
  IntMat b = m22(0, 1, 1, 0);
  ConjugacyResult r = glz_conjugate_search(a, b);
  CHECK(r.status == ConjugacyStatus::None);
  CHECK(r.certificate.find("mod 2") != std::string::npos);
}

TEST_CASE("conjugacy search: inverse rotations are conjugate") {
  IntMat a = m22(0, -1, 1, 0);
  IntMat b = m22(0, 1, -1, 0);
  ConjugacyResult r = glz_conjugate_search(a, b);
  REQUIRE(r.status == ConjugacyStatus::Found);
  CHECK(mat_eq(r.conjugator * a, b * r.conjugator));
  CHECK(is_unimodular(r.conjugator));
}

TEST_CASE("conjugacy search certificates: distinct char polys") {
  ConjugacyResult r = glz_conjugate_search(m22(1, 0, 0, 1), m22(1, 1, 0, 1));
  CHECK(r.status == ConjugacyStatus::None);
  CHECK(!r.certificate.empty());
}

TEST_CASE("conjugacy invariance under random conjugation") {
  SplitMix64 rng(99);
  IntMat a = m22(0, -1, 1, 0);
  for (int t = 0; t < 10; ++t) {
    UnimodularPair u = random_unimodular(2, rng);
    CHECK(mat_is_identity(u.m * u.minv));
    IntMat b = u.m * a * u.minv;
    ConjugacyResult r = glz_conjugate_search(a, b, {.coeff_bound = 8});
    REQUIRE(r.status == ConjugacyStatus::Found);
    CHECK(mat_eq(r.conjugator * a, b * r.conjugator));
  }
}

TEST_CASE("unimodular inverse round-trip") {
  SplitMix64 rng(5);
  for (int t = 0; t < 10; ++t) {
    UnimodularPair u = random_unimodular(3, rng, 12);
    IntMat inv = unimodular_inverse(u.m);
    CHECK(mat_eq(inv, u.minv));
    CHECK(mat_is_identity(u.m * inv));
  }
}
