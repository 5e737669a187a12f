#pragma once

// Integer lattice algorithms: Hermite and Smith normal forms with transformation matrices,
// kernels, saturation, unimodular basis completion and polar bases. Rows are lattice vectors.
//
// The algorithms are templated on the scalar so they run on Int (overflow-checked) as well as
// on BigInt; the solver uses Int.

#include <algorithm>
#include <compare>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "torsion/errors.hpp"
#include "torsion/numbers.hpp"

namespace torsion {

template <class T>
using Matrix = std::vector<std::vector<T>>;
using IntVector = std::vector<Int>;
using IntMatrix = Matrix<Int>;

template <class T>
Matrix<T> identityMatrix(std::size_t n) {
  Matrix<T> m(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
  return m;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m, std::size_t cols) {
  Matrix<T> t(cols, std::vector<T>(m.size(), T(0)));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b, std::size_t bCols) {
  Matrix<T> c(a.size(), std::vector<T>(bCols, T(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < bCols; ++j)
        c[i][j] = checked::add(c[i][j], checked::mul(a[i][k], b[k][j]));
    }
  return c;
}

/// Row vector times matrix.
template <class T>
std::vector<T> rowTimes(std::span<const T> v, const Matrix<T>& m, std::size_t cols) {
  std::vector<T> r(cols, T(0));
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) r[j] = checked::add(r[j], checked::mul(v[k], m[k][j]));
  }
  return r;
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s = checked::add(s, checked::mul(a[i], b[i]));
  return s;
}

namespace detail {

// Replace rows (r, i) of each matrix by (s*r + t*i, -(b/g)*r + (a/g)*i).
template <class T>
void combineRows(Matrix<T>& m, std::size_t r, std::size_t i, const T& s, const T& t, const T& u, const T& v) {
  for (std::size_t j = 0; j < m[r].size(); ++j) {
    T x = m[r][j], y = m[i][j];
    m[r][j] = checked::add(checked::mul(s, x), checked::mul(t, y));
    m[i][j] = checked::add(checked::mul(u, x), checked::mul(v, y));
  }
}

template <class T>
void combineCols(Matrix<T>& m, std::size_t c, std::size_t j, const T& s, const T& t, const T& u, const T& v) {
  for (auto& row : m) {
    T x = row[c], y = row[j];
    row[c] = checked::add(checked::mul(s, x), checked::mul(t, y));
    row[j] = checked::add(checked::mul(u, x), checked::mul(v, y));
  }
}

template <class T>
void subtractRowMultiple(Matrix<T>& m, std::size_t target, std::size_t source, const T& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m[target].size(); ++j)
    m[target][j] = checked::sub(m[target][j], checked::mul(q, m[source][j]));
}

}  // namespace detail

template <class T>
struct HermiteResult {
  Matrix<T> basis;      ///< rank rows, row echelon, positive pivots, reduced above pivots
  Matrix<T> transform;  ///< k x k unimodular; first rank rows of transform*M equal basis, rest are zero
  std::size_t rank = 0;
};

/// Row-style Hermite normal form of a k x n matrix.
template <class T>
HermiteResult<T> hermiteNormalForm(Matrix<T> h, std::size_t n) {
  const std::size_t k = h.size();
  Matrix<T> tr = identityMatrix<T>(k);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < k; ++col) {
    for (std::size_t i = row + 1; i < k; ++i) {
      if (h[i][col] == 0) continue;
      T a = h[row][col], b = h[i][col], s, t;
      T g = extendedGcd(a, b, s, t);
      T u = -(b / g), v = a / g;
      detail::combineRows(h, row, i, s, t, u, v);
      detail::combineRows(tr, row, i, s, t, u, v);
    }
    if (h[row][col] == 0) continue;
    if (h[row][col] < 0) {
      for (auto& x : h[row]) x = -x;
      for (auto& x : tr[row]) x = -x;
    }
    for (std::size_t i = 0; i < row; ++i) {
      T q = floorDiv(h[i][col], h[row][col]);
      detail::subtractRowMultiple(h, i, row, q);
      detail::subtractRowMultiple(tr, i, row, q);
    }
    ++row;
  }
  HermiteResult<T> result;
  result.rank = row;
  result.basis.assign(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(row));
  result.transform = std::move(tr);
  return result;
}

/// Integer kernel {x : M x = 0} (equivalently the lattice orthogonal to the row space), as rows.
template <class T>
Matrix<T> integerKernel(const Matrix<T>& m, std::size_t n) {
  auto res = hermiteNormalForm(transpose(m, n), m.size());
  Matrix<T> ker(res.transform.begin() + static_cast<std::ptrdiff_t>(res.rank), res.transform.end());
  return ker;
}

template <class T>
struct SmithResult {
  Matrix<T> left;      ///< W, k x k unimodular
  Matrix<T> diagonal;  ///< D = W A V, k x n, diagonal entries d_1 | d_2 | ... , zeros after rank
  Matrix<T> right;     ///< V, n x n unimodular
  std::size_t rank = 0;
};

/// Smith normal form of an arbitrary k x n integer matrix.
template <class T>
SmithResult<T> smithDecompose(Matrix<T> d, std::size_t n) {
  const std::size_t k = d.size();
  Matrix<T> w = identityMatrix<T>(k), v = identityMatrix<T>(n);
  std::size_t t = 0;
  for (; t < std::min(k, n); ++t) {
    // Pivot: nonzero entry of least absolute value.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < k; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (d[i][j] != 0 && (!best || absValue(d[i][j]) < absValue(d[best->first][best->second]))) best = {i, j};
    if (!best) break;
    std::swap(d[t], d[best->first]);
    std::swap(w[t], w[best->first]);
    for (auto& row : d) std::swap(row[t], row[best->second]);
    for (auto& row : v) std::swap(row[t], row[best->second]);

    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < k; ++i) {
        if (d[i][t] == 0) continue;
        if (d[i][t] % d[t][t] == 0) {
          T q = d[i][t] / d[t][t];
          detail::subtractRowMultiple(d, i, t, q);
          detail::subtractRowMultiple(w, i, t, q);
          continue;
        }
        T a = d[t][t], b = d[i][t], s, tt;
        T g = extendedGcd(a, b, s, tt);
        T u = -(b / g), vv = a / g;
        detail::combineRows(d, t, i, s, tt, u, vv);
        detail::combineRows(w, t, i, s, tt, u, vv);
        changed = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d[t][j] == 0) continue;
        if (d[t][j] % d[t][t] == 0) {
          T q = d[t][j] / d[t][t];
          for (auto& row : d) row[j] = checked::sub(row[j], checked::mul(q, row[t]));
          for (auto& row : v) row[j] = checked::sub(row[j], checked::mul(q, row[t]));
          continue;
        }
        T a = d[t][t], b = d[t][j], s, tt;
        T g = extendedGcd(a, b, s, tt);
        T u = -(b / g), vv = a / g;
        detail::combineCols(d, t, j, s, tt, u, vv);
        detail::combineCols(v, t, j, s, tt, u, vv);
        changed = true;
      }
      if (changed) continue;
      // Enforce divisibility of the remaining block by the pivot.
      std::optional<std::size_t> badRow;
      for (std::size_t i = t + 1; i < k && !badRow; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d[i][j] % d[t][t] != 0) {
            badRow = i;
            break;
          }
      if (!badRow) break;
      for (std::size_t j = 0; j < n; ++j) d[t][j] = checked::add(d[t][j], d[*badRow][j]);
      for (std::size_t j = 0; j < k; ++j) w[t][j] = checked::add(w[t][j], w[*badRow][j]);
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : w[t]) x = -x;
    }
  }
  return SmithResult<T>{std::move(w), std::move(d), std::move(v), t};
}

/// Smith normal form of a nonsingular square matrix; rejects singular input.
template <class T>
SmithResult<T> smithNormalForm(const Matrix<T>& a) {
  auto res = smithDecompose(a, a.size());
  if (res.rank != a.size()) throw InvalidArgument("smithNormalForm: matrix is singular");
  return res;
}

/// Exact determinant (fraction-free Bareiss elimination).
template <class T>
BigInt determinant(const Matrix<T>& a) {
  const std::size_t n = a.size();
  Matrix<BigInt> m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = BigInt(a[i][j]);
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return n == 0 ? BigInt(1) : BigInt(sign * m[n - 1][n - 1]);
}

/// Inverse over Q of a nonsingular square integer matrix.
template <class T>
Matrix<Rational> inverseRational(const Matrix<T>& a) {
  const std::size_t n = a.size();
  Matrix<Rational> m(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(BigInt(a[i][j]));
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) throw InvalidArgument("matrix is singular");
    std::swap(m[p], m[c]);
    Rational inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  Matrix<Rational> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

inline bool isUnimodular(const IntMatrix& u) { return abs(determinant(u)) == 1; }

/// Inverse of a unimodular integer matrix.
inline IntMatrix inverseUnimodular(const IntMatrix& u) {
  if (!isUnimodular(u)) throw InvalidArgument("matrix is not unimodular");
  auto inv = inverseRational(u);
  IntMatrix r(u.size(), IntVector(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) r[i][j] = toInt(inv[i][j].get_num());
  return r;
}

/// Polar (dual) basis: rows b*_j with <b_i, b*_j> = delta_ij, i.e. the inverse transpose.
inline Matrix<Rational> polarBasis(const IntMatrix& a) {
  auto inv = inverseRational(a);
  return transpose(inv, a.size());
}

/// Lattice span_R^perp(A) cap Z^n, returned in Hermite normal form.
inline IntMatrix orthogonalComplementLattice(const IntMatrix& a, std::size_t n) {
  IntMatrix ker = a.empty() ? identityMatrix<Int>(n) : integerKernel(a, n);
  if (ker.empty()) return {};
  return hermiteNormalForm(ker, n).basis;
}

/// span_R(rows) cap Z^n in Hermite normal form.
inline IntMatrix saturation(const IntMatrix& m, std::size_t n) {
  return orthogonalComplementLattice(orthogonalComplementLattice(m, n), n);
}

/// Unimodular matrix whose first row is the primitive vector a; later rows size-reduced.
inline IntMatrix extendPrimitiveToBasis(std::span<const Int> a) {
  const std::size_t n = a.size();
  Int g = 0;
  for (Int x : a) g = std::gcd(g, x);
  if (g != 1) throw InvalidArgument("extendPrimitiveToBasis: vector is not primitive");
  // Column operations V with a * V = e_1; then V^{-1} has first row a.
  IntMatrix row{IntVector(a.begin(), a.end())};
  IntMatrix v = identityMatrix<Int>(n);
  for (std::size_t j = 1; j < n; ++j) {
    if (row[0][j] == 0) continue;
    Int x = row[0][0], y = row[0][j], s, t;
    Int gg = extendedGcd(x, y, s, t);
    detail::combineCols(row, 0, j, s, t, -(y / gg), x / gg);
    detail::combineCols(v, 0, j, s, t, -(y / gg), x / gg);
  }
  if (row[0][0] < 0) {
    for (auto& r : v) r[0] = -r[0];
  }
  IntMatrix u = inverseUnimodular(v);
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t j = k; j-- > 0;) {
      Int norm = dot<Int>(u[j], u[j]);
      if (norm == 0) continue;
      Rational q(BigInt(dot<Int>(u[k], u[j])), BigInt(norm));
      BigInt rounded = floorDiv(BigInt(2 * q.get_num() + q.get_den()), BigInt(2 * q.get_den()));
      detail::subtractRowMultiple(u, k, j, toInt(rounded));
    }
  }
  return u;
}

/// If v lies in the lattice with HNF basis h, its integer coordinates.
inline std::optional<IntVector> latticeCoordinates(const IntMatrix& h, std::span<const Int> v) {
  IntVector rest(v.begin(), v.end());
  IntVector coords(h.size(), 0);
  for (std::size_t k = 0; k < h.size(); ++k) {
    std::size_t p = 0;
    while (h[k][p] == 0) ++p;
    for (std::size_t j = 0; j < p; ++j)
      if (rest[j] != 0) return std::nullopt;
    if (rest[p] % h[k][p] != 0) return std::nullopt;
    Int c = rest[p] / h[k][p];
    coords[k] = c;
    for (std::size_t j = 0; j < rest.size(); ++j) rest[j] = checked::sub(rest[j], checked::mul(c, h[k][j]));
  }
  for (Int x : rest)
    if (x != 0) return std::nullopt;
  return coords;
}

/// A sublattice of Z^n held by its canonical (Hermite) basis.
class IntegerLattice {
 public:
  explicit IntegerLattice(std::size_t ambient = 0) : ambient_(ambient) {}
  IntegerLattice(const IntMatrix& generators, std::size_t ambient)
      : ambient_(ambient), basis_(generators.empty() ? IntMatrix{} : hermiteNormalForm(generators, ambient).basis) {}

  static IntegerLattice full(std::size_t n) { return IntegerLattice(identityMatrix<Int>(n), n); }

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const IntMatrix& basis() const noexcept { return basis_; }

  bool contains(std::span<const Int> v) const { return latticeCoordinates(basis_, v).has_value(); }
  bool containsLattice(const IntegerLattice& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const IntVector& r) { return contains(r); });
  }
  bool isPrimitive() const { return saturation(basis_, ambient_) == basis_; }
  bool isFull() const { return rank() == ambient_ && abs(determinant(basis_)) == 1; }

  /// det(B B^T); the lattice determinant is its square root.
  BigInt gramDeterminant() const {
    Matrix<BigInt> gram(rank(), std::vector<BigInt>(rank()));
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) {
        BigInt s = 0;
        for (std::size_t c = 0; c < ambient_; ++c) s += BigInt(basis_[i][c]) * basis_[j][c];
        gram[i][j] = s;
      }
    return determinant(gram);
  }

  friend bool operator==(const IntegerLattice&, const IntegerLattice&) = default;
  friend auto operator<=>(const IntegerLattice&, const IntegerLattice&) = default;

 private:
  std::size_t ambient_;
  IntMatrix basis_;
};

}  // namespace torsion
