#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

// Dense exact-integer matrices: Eigen as the container/expression layer,
// GMP integers as the scalar. Every algorithm downstream assumes entries are
// never rounded; none of Eigen's floating-point decompositions are used.

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;
  typedef mpz_class Literal;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
};

}  // namespace Eigen

namespace torlat {

using Int = mpz_class;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using index_t = Eigen::Index;

inline IntMat int_identity(index_t n) { return IntMat::Identity(n, n); }
inline IntMat int_zero(index_t r, index_t c) { return IntMat::Zero(r, c); }

template <typename DerivedA, typename DerivedB>
bool mat_eq(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (index_t i = 0; i < a.rows(); ++i)
    for (index_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <typename Derived>
bool mat_is_zero(const Eigen::MatrixBase<Derived>& a) {
  for (index_t i = 0; i < a.rows(); ++i)
    for (index_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) return false;
  return true;
}

inline bool mat_is_identity(const IntMat& a) {
  if (a.rows() != a.cols()) return false;
  for (index_t i = 0; i < a.rows(); ++i)
    for (index_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != ((i == j) ? 1 : 0)) return false;
  return true;
}

// Total order on matrices: dimensions first, then row-major entry compare.
inline int mat_cmp(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
  if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
  for (index_t i = 0; i < a.rows(); ++i)
    for (index_t j = 0; j < a.cols(); ++j) {
      int c = cmp(a(i, j), b(i, j));
      if (c != 0) return c < 0 ? -1 : 1;
    }
  return 0;
}

inline bool mat_lt(const IntMat& a, const IntMat& b) { return mat_cmp(a, b) < 0; }

// Stable string key, usable for hashing and ordered containers.
inline std::string mat_key(const IntMat& a) {
  std::string s;
  s.reserve(static_cast<size_t>(a.size()) * 4 + 16);
  s += std::to_string(a.rows());
  s += 'x';
  s += std::to_string(a.cols());
  for (index_t i = 0; i < a.rows(); ++i)
    for (index_t j = 0; j < a.cols(); ++j) {
      s += ';';
      s += a(i, j).get_str();
    }
  return s;
}

inline IntMat hcat(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  IntMat r(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) r.leftCols(a.cols()) = a;
  if (b.cols() > 0) r.rightCols(b.cols()) = b;
  return r;
}

inline IntMat mat_from_rows(index_t rows, index_t cols, const std::vector<long>& entries) {
  IntMat m(rows, cols);
  for (index_t i = 0; i < rows; ++i)
    for (index_t j = 0; j < cols; ++j) m(i, j) = entries[static_cast<size_t>(i * cols + j)];
  return m;
}

inline std::string mat_to_string(const IntMat& a) {
  std::string s = "[";
  for (index_t i = 0; i < a.rows(); ++i) {
    s += (i ? ",[" : "[");
    for (index_t j = 0; j < a.cols(); ++j) {
      if (j) s += ",";
      s += a(i, j).get_str();
    }
    s += "]";
  }
  s += "]";
  return s;
}

}  // namespace torlat
