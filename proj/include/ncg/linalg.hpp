#pragma once

#include <vector>

#include "ncg/errors.hpp"
#include "ncg/scalars.hpp"

namespace ncg {

using RatMat = std::vector<std::vector<Rational>>;

inline RatMat rat_identity(size_t n) {
  RatMat m(n, std::vector<Rational>(n, Rational(0)));
  for (size_t k = 0; k < n; ++k) m[k][k] = 1;
  return m;
}

inline bool rat_is_identity(const RatMat& m) {
  for (size_t a = 0; a < m.size(); ++a)
    for (size_t b = 0; b < m[a].size(); ++b)
      if (m[a][b] != (a == b ? 1 : 0)) return false;
  return true;
}

inline RatMat rat_mul(const RatMat& a, const RatMat& b) {
  require(!a.empty() && !b.empty() && a[0].size() == b.size(), Err::RankMismatch,
          "matrix dimensions do not match");
  RatMat r(a.size(), std::vector<Rational>(b[0].size(), Rational(0)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k)
      for (size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline RatMat rat_transpose(const RatMat& a) {
  if (a.empty()) return a;
  RatMat r(a[0].size(), std::vector<Rational>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

inline RatMat rat_inverse(RatMat a) {
  const size_t n = a.size();
  for (const auto& row : a)
    require(row.size() == n, Err::RankMismatch, "inverse of a non-square matrix");
  RatMat inv = rat_identity(n);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    require(piv < n, Err::SingularMatrix, "matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational d = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline size_t rat_rank(RatMat a) {
  size_t rank = 0;
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[rank][col];
      for (size_t j = col; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Row reduction over the scalar field; used to match a derivation against a
// rational span, so solutions are additionally required to be rational by
// the caller.
struct ScalarSolve {
  bool consistent = false;
  bool unique = false;
  std::vector<Scalar> x;
};

inline ScalarSolve scalar_solve(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  std::vector<size_t> pivot_col;
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && a[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    std::swap(b[piv], b[rank]);
    const Scalar d = a[rank][col];
    for (size_t j = 0; j < cols; ++j) a[rank][j] = a[rank][j] / d;
    b[rank] = b[rank] / d;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col].is_zero()) continue;
      const Scalar f = a[r][col];
      for (size_t j = 0; j < cols; ++j) a[r][j] = a[r][j] - f * a[rank][j];
      b[r] = b[r] - f * b[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  ScalarSolve out;
  for (size_t r = rank; r < rows; ++r)
    if (!b[r].is_zero()) return out;  // inconsistent
  out.consistent = true;
  out.unique = rank == cols;
  out.x.assign(cols, Scalar::zero());
  for (size_t r = 0; r < rank; ++r) out.x[pivot_col[r]] = b[r];
  return out;
}

}  // namespace ncg
