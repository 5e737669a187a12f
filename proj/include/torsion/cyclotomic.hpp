#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N), stored in the power basis
// 1, zeta_N, ..., zeta_N^{phi(N)-1} modulo the N-th cyclotomic polynomial.

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torsion/errors.hpp"
#include "torsion/numbers.hpp"

namespace torsion {

namespace detail {

// Integer coefficients of Phi_N, lowest degree first. Cached per level; entries are never
// mutated after insertion so returned references stay valid across threads.
inline const std::vector<Int>& cyclotomicPolynomial(Int n) {
  static std::mutex mutex;
  static std::map<Int, std::unique_ptr<std::vector<Int>>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<Int> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (Int d : divisors(n)) {
    if (d == n) continue;
    const std::vector<Int>& divisor = cyclotomicPolynomial(d);
    std::size_t dd = divisor.size() - 1;
    std::size_t deg = poly.size() - 1;
    std::vector<Int> quotient(deg - dd + 1, 0);
    for (std::size_t i = deg + 1; i-- > dd;) {
      Int c = poly[i];
      if (c == 0) continue;
      quotient[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) poly[i - dd + j] = checked::sub(poly[i - dd + j], checked::mul(c, divisor[j]));
    }
    poly = std::move(quotient);
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(n, std::make_unique<std::vector<Int>>(std::move(poly)));
  return *it->second;
}

// Reduce a dense polynomial in x = zeta_n (any length) to the power basis of Q(zeta_n).
inline std::vector<Rational> reduceModCyclotomic(std::vector<Rational> dense, Int n) {
  const std::size_t nn = static_cast<std::size_t>(n);
  if (dense.size() > nn) {
    for (std::size_t i = nn; i < dense.size(); ++i)
      if (dense[i] != 0) dense[i % nn] += dense[i];
    dense.resize(nn);
  }
  const std::vector<Int>& phi = cyclotomicPolynomial(n);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = dense.size(); i-- > deg;) {
    if (dense[i] == 0) continue;
    Rational c = dense[i];
    for (std::size_t j = 0; j < deg; ++j)
      if (phi[j] != 0) dense[i - deg + j] -= c * phi[j];
    dense[i] = 0;
  }
  dense.resize(deg);
  return dense;
}

}  // namespace detail

/// An exact element of a cyclotomic field.
class Cyclo {
 public:
  Cyclo() : level_(1), coords_(1, Rational(0)) {}
  Cyclo(long value) : level_(1), coords_(1, Rational(value)) {}  // NOLINT(google-explicit-constructor)
  Cyclo(const Rational& value) : level_(1), coords_(1, value) {}  // NOLINT(google-explicit-constructor)

  /// Build directly from power-basis coordinates at a canonical level.
  Cyclo(Int level, std::vector<Rational> coords) : level_(level), coords_(std::move(coords)) {
    if (level < 1 || canonicalLevel(level) != level)
      throw InvalidArgument("cyclotomic level must be odd or divisible by 4");
    if (coords_.size() != static_cast<std::size_t>(eulerPhi(level)))
      throw InvalidArgument("coordinate vector length must equal phi(level)");
  }

  /// e^{2 pi i k/m}, stored at the canonical level of the reduced fraction.
  static Cyclo rootOfUnity(Int k, Int m) {
    if (m <= 0) throw InvalidArgument("root of unity order must be positive");
    k = floorMod(k, m);
    Int g = std::gcd(k, m);
    if (g == 0) g = m;
    k /= g;
    m /= g;
    Rational sign = 1;
    if (m % 4 == 2) {
      Int half = m / 2;
      if (k % 2 == 0) {
        k = floorMod(k / 2, half);
      } else {
        k = floorMod((k - half) / 2, half);
        sign = -1;
      }
      m = half;
    }
    std::vector<Rational> dense(static_cast<std::size_t>(k) + 1, Rational(0));
    dense[static_cast<std::size_t>(k)] = sign;
    return Cyclo(m, detail::reduceModCyclotomic(std::move(dense), m));
  }

  static Cyclo zeta(Int m) { return rootOfUnity(1, m); }

  Int level() const noexcept { return level_; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }

  bool isZero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }
  bool isOne() const { return normalized() == Cyclo(1); }
  bool isRational() const { return normalized().level_ == 1; }
  Rational rationalValue() const {
    Cyclo n = normalized();
    if (n.level_ != 1) throw InvalidArgument("cyclotomic number is not rational");
    return n.coords_[0];
  }

  /// Re-express at level m; the current level must divide m.
  Cyclo liftTo(Int m) const {
    m = canonicalLevel(m);
    if (m % level_ != 0) throw InvalidArgument("target level is not a multiple of the current level");
    if (m == level_) return *this;
    Int step = m / level_;
    std::vector<Rational> dense(static_cast<std::size_t>(step) * coords_.size(), Rational(0));
    for (std::size_t j = 0; j < coords_.size(); ++j) dense[j * static_cast<std::size_t>(step)] = coords_[j];
    return Cyclo(m, detail::reduceModCyclotomic(std::move(dense), m));
  }

  /// The same number stored at the smallest canonical level containing it.
  Cyclo normalized() const {
    if (level_ == 1) return *this;
    if (isZero()) return Cyclo();
    for (Int d : divisors(level_)) {
      if (d == level_) break;
      if (canonicalLevel(d) != d) continue;
      if (auto sub = descendTo(d)) return *sub;
    }
    return *this;
  }

  /// Field automorphism zeta_N -> zeta_N^k at the current level (gcd(k, N) = 1).
  Cyclo galois(Int k) const {
    k = floorMod(k, level_);
    if (std::gcd(k, level_) != 1) throw InvalidArgument("Galois exponent must be a unit modulo the level");
    std::vector<Rational> dense(static_cast<std::size_t>(level_), Rational(0));
    for (std::size_t j = 0; j < coords_.size(); ++j)
      if (coords_[j] != 0) dense[static_cast<std::size_t>(floorMod(checked::mul(static_cast<Int>(j), k), level_))] += coords_[j];
    return Cyclo(level_, detail::reduceModCyclotomic(std::move(dense), level_));
  }

  std::complex<double> toComplex() const {
    std::complex<double> sum = 0;
    for (std::size_t j = 0; j < coords_.size(); ++j) {
      if (coords_[j] == 0) continue;
      double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(level_);
      sum += coords_[j].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return sum;
  }

  /// Sum of absolute values of coordinates; bounds |value| from above.
  double magnitudeBound() const {
    double s = 0;
    for (const auto& c : coords_) s += std::abs(c.get_d());
    return s;
  }

  Cyclo operator-() const {
    Cyclo r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
  }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    if (a.level_ == b.level_) {
      Cyclo r = a;
      for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] += b.coords_[i];
      return r;
    }
    Int l = lcmInt(a.level_, b.level_);
    return a.liftTo(l) + b.liftTo(l);
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (a.level_ != b.level_) {
      if (a.level_ == 1) return b.scaled(a.coords_[0]);
      if (b.level_ == 1) return a.scaled(b.coords_[0]);
      Int l = lcmInt(a.level_, b.level_);
      return a.liftTo(l) * b.liftTo(l);
    }
    if (a.level_ == 1) return Cyclo(a.coords_[0] * b.coords_[0]);
    std::vector<Rational> dense(a.coords_.size() + b.coords_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coords_.size(); ++i) {
      if (a.coords_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coords_.size(); ++j)
        if (b.coords_[j] != 0) dense[i + j] += a.coords_[i] * b.coords_[j];
    }
    return Cyclo(a.level_, detail::reduceModCyclotomic(std::move(dense), a.level_));
  }

  Cyclo scaled(const Rational& s) const {
    Cyclo r = *this;
    for (auto& c : r.coords_) c *= s;
    return r;
  }

  Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
  Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
  Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }

  /// Multiplicative inverse; throws DivisionByZero on zero.
  Cyclo inverse() const {
    if (isZero()) throw DivisionByZero();
    if (level_ == 1) return Cyclo(1 / coords_[0]);
    // Solve (a * y) = 1 with the multiplication-by-a matrix.
    const std::size_t n = coords_.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> dense(n + j, Rational(0));
      for (std::size_t i = 0; i < n; ++i) dense[i + j] = coords_[i];
      auto col = detail::reduceModCyclotomic(std::move(dense), level_);
      for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
    }
    m[0][n] = 1;
    auto y = solveSquare(std::move(m));
    return Cyclo(level_, std::move(y));
  }

  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.level_ == b.level_) return a.coords_ == b.coords_;
    Int l = lcmInt(a.level_, b.level_);
    return a.liftTo(l).coords_ == b.liftTo(l).coords_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  std::string toString() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Cyclo& a) {
    bool first = true;
    for (std::size_t j = 0; j < a.coords_.size(); ++j) {
      const Rational& c = a.coords_[j];
      if (c == 0) continue;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      Rational ac = abs(c);
      if (j == 0) {
        os << ac;
      } else {
        if (ac != 1) os << ac << "*";
        os << "zeta" << a.level_;
        if (j > 1) os << "^" << j;
      }
      first = false;
    }
    if (first) os << "0";
    return os;
  }

 private:
  // Express this number at level d (d | level) if it lies in Q(zeta_d).
  std::optional<Cyclo> descendTo(Int d) const {
    const std::size_t rows = coords_.size();
    const std::size_t cols = static_cast<std::size_t>(eulerPhi(d));
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1, Rational(0)));
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<Rational> basis(cols, Rational(0));
      basis[j] = 1;
      auto lifted = Cyclo(d, std::move(basis)).liftTo(level_);
      for (std::size_t i = 0; i < rows; ++i) m[i][j] = lifted.coords_[i];
    }
    for (std::size_t i = 0; i < rows; ++i) m[i][cols] = coords_[i];
    // Row reduce the augmented system.
    std::size_t pivotRow = 0;
    std::vector<std::size_t> pivotCols;
    for (std::size_t c = 0; c < cols && pivotRow < rows; ++c) {
      std::size_t p = pivotRow;
      while (p < rows && m[p][c] == 0) ++p;
      if (p == rows) continue;
      std::swap(m[p], m[pivotRow]);
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == pivotRow || m[r][c] == 0) continue;
        Rational f = m[r][c] / m[pivotRow][c];
        for (std::size_t k = c; k <= cols; ++k) m[r][k] -= f * m[pivotRow][k];
      }
      pivotCols.push_back(c);
      ++pivotRow;
    }
    for (std::size_t r = pivotRow; r < rows; ++r)
      if (m[r][cols] != 0) return std::nullopt;
    std::vector<Rational> y(cols, Rational(0));
    for (std::size_t r = 0; r < pivotCols.size(); ++r) y[pivotCols[r]] = m[r][cols] / m[r][pivotCols[r]];
    return Cyclo(d, std::move(y));
  }

  static std::vector<Rational> solveSquare(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && m[p][c] == 0) ++p;
      if (p == n) throw DivisionByZero();
      std::swap(m[p], m[c]);
      Rational inv = 1 / m[c][c];
      for (std::size_t k = c; k <= n; ++k) m[c][k] *= inv;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || m[r][c] == 0) continue;
        Rational f = m[r][c];
        for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
      }
    }
    std::vector<Rational> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = m[i][n];
    return y;
  }

  Int level_;
  std::vector<Rational> coords_;
};

/// Same number, lifted to `level` (which must be a multiple of a.level()).
inline Cyclo embedToLevel(const Cyclo& a, Int level) { return a.liftTo(level); }

}  // namespace torsion
