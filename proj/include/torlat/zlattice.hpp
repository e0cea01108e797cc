#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torlat/intmat.hpp"

// Exact linear algebra over Z: Smith/column normal forms, kernels, cokernels,
// finite-order tests and the bounded GL_d(Z) conjugacy search. All functions
// are pure; transforms are unimodular by construction and verified in tests.

namespace torlat {

// U * A * V = D, U and V unimodular, D diagonal with d_1 | d_2 | ... and
// zeros trailing.
struct SmithDecomposition {
  IntMat U;
  IntMat D;
  IntMat V;
  index_t rows = 0;
  index_t cols = 0;

  std::vector<Int> diagonal() const {
    std::vector<Int> d;
    for (index_t k = 0; k < std::min(D.rows(), D.cols()); ++k) d.push_back(D(k, k));
    return d;
  }
};

// Invariant-factor presentation of a finitely generated abelian group.
// Canonical: no factor equals 1, each factor divides the next.
struct AbelianGroupShape {
  std::vector<Int> invariant_factors;
  size_t free_rank = 0;

  bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }
  bool is_finite() const { return free_rank == 0; }
  Int order() const {
    if (!is_finite()) throw std::domain_error("infinite group has no order");
    Int o = 1;
    for (const auto& f : invariant_factors) o *= f;
    return o;
  }
  bool operator==(const AbelianGroupShape& o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
  bool operator!=(const AbelianGroupShape& o) const { return !(*this == o); }
  std::string to_string() const;
};

// Builds the canonical shape from a list of diagonal entries (absolute values
// taken, ones dropped, zeros counted as free rank) plus extra free rank.
AbelianGroupShape shape_from_diagonal(const std::vector<Int>& diag, size_t extra_free);

SmithDecomposition smith_normal_form(const IntMat& a);
// Diagonal-only variant (no transform bookkeeping); same pivot strategy.
std::vector<Int> smith_diagonal(const IntMat& a);

// Shape of Z^rows / A Z^cols.
AbelianGroupShape cokernel_shape(const IntMat& a);

// ---------------------------------------------------------------------------
// Sparse columns, used for the large boundary matrices of bar resolutions.

struct SparseIntMat {
  index_t rows = 0;
  // cols[j] = sorted (row, value) pairs, value != 0
  std::vector<std::vector<std::pair<index_t, Int>>> cols;

  index_t ncols() const { return static_cast<index_t>(cols.size()); }
  void add_entry(index_t col, index_t row, Int v) {
    cols[static_cast<size_t>(col)].emplace_back(row, std::move(v));
  }
  void finalize();  // sort rows, combine duplicates, drop zeros
  static SparseIntMat from_dense(const IntMat& a);
  IntMat to_dense() const;
};

// Integer basis of {x : A x = 0}; columns of the result, possibly 0 columns.
IntMat kernel_basis(const SparseIntMat& a);
IntMat kernel_basis(const IntMat& a);

// Triangular basis (pivot columns of a column reduction) of the column
// lattice of A, as an n x rank matrix together with the pivot rows.
struct ColumnBasis {
  IntMat basis;                 // rows() x rank
  std::vector<index_t> pivot_rows;  // strictly increasing, one per basis column
  IntMat coords;                // rank x ncols(A): A = basis * coords
};
ColumnBasis column_lattice_basis(const IntMat& a);

// Solves A Y = B over Z; nullopt when some column of B is not in the column
// lattice of A.
std::optional<IntMat> solve_columns(const IntMat& a, const IntMat& b);
bool in_column_span(const IntMat& a, const IntVec& b);

// Presentation of span(g1)/span(g2), for span(g2) a sublattice of span(g1).
// generators: one column per shape slot (torsion factors first, then free),
// expressed in the ambient Z^n coordinates of the input generators.
// The remaining fields expose the coordinate system: basis is a triangular
// basis of span(g1); with c the basis coordinates of x and z = u * c, the
// class of x is read off slot s as z(slots[s]) mod diag_full(slots[s]).
struct QuotientPresentation {
  AbelianGroupShape shape;
  IntMat generators;
  IntMat basis;
  std::vector<index_t> pivot_rows;
  IntMat u;
  IntMat uinv;
  std::vector<Int> diag_full;      // length = basis.cols(); 0 marks a free slot
  std::vector<index_t> slots;      // shape slot -> u-coordinate
};
QuotientPresentation lattice_quotient(const IntMat& g1, const IntMat& g2);

// Coordinates of x in a triangular column basis (as produced by
// column_lattice_basis); throws std::invalid_argument when x is outside.
IntVec solve_triangular(const IntMat& basis, const std::vector<index_t>& pivot_rows,
                        IntVec x);

// Exact inverse of a unimodular matrix.
IntMat unimodular_inverse(const IntMat& u);

Int det_exact(const IntMat& a);
bool is_unimodular(const IntMat& a);

// Characteristic polynomial coefficients, constant term first.
std::vector<Int> charpoly(const IntMat& a);

struct OrderResult {
  bool finite = false;
  unsigned long order = 0;  // valid when finite
};
// Smallest k <= bound with A^k = I; finite=false when no such k exists up to
// the bound (for d <= 4 a bound of 12 decides finiteness of order).
OrderResult matrix_order(const IntMat& a, unsigned long bound);

// ---------------------------------------------------------------------------
// Bounded conjugacy search in GL_d(Z).

enum class ConjugacyStatus { Found, None, Inconclusive };

struct ConjugacyResult {
  ConjugacyStatus status = ConjugacyStatus::Inconclusive;
  IntMat conjugator;        // valid when Found: X A = B X, det X = +-1
  std::string certificate;  // non-empty when None
};

struct ConjugacySearchOptions {
  unsigned long coeff_bound = 5;     // coefficient box in the intertwiner lattice
  unsigned long max_points = 20000000;
  std::vector<unsigned long> moduli = {2, 3, 4};  // reduction certificates
};

// Simultaneous conjugacy: one X with X A_t = B_t X for all t.
ConjugacyResult glz_conjugate_search(const std::vector<IntMat>& as, const std::vector<IntMat>& bs,
                                     const ConjugacySearchOptions& opt = {});
ConjugacyResult glz_conjugate_search(const IntMat& a, const IntMat& b,
                                     const ConjugacySearchOptions& opt = {});

// Basis of {X : X A_t = B_t X for all t} as d^2-vectors (column-major over
// entries X_{k,l} at index k*d+l).
IntMat intertwiner_kernel(const std::vector<IntMat>& as, const std::vector<IntMat>& bs);

// Brute-force conjugacy of reductions mod m (d <= 3, or m = 2 for d = 4).
// Returns nullopt when the modular check is out of range for this size.
std::optional<bool> conjugate_mod_m(const IntMat& a, const IntMat& b, unsigned long m);

// Deterministic pseudo-random unimodular matrices (elementary-op products).
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  uint64_t below(uint64_t n) { return next() % n; }
};

struct UnimodularPair {
  IntMat m;
  IntMat minv;
};
UnimodularPair random_unimodular(index_t d, SplitMix64& rng, int steps = 8);

}  // namespace torlat
