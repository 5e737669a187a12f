#pragma once

// Sparse Laurent polynomials in n variables with cyclotomic coefficients.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torsion/cyclotomic.hpp"
#include "torsion/lattice.hpp"
#include "torsion/roots.hpp"

namespace torsion {

using Exponent = IntVector;

class LaurentPolynomial {
 public:
  using TermMap = std::map<Exponent, Cyclo>;

  explicit LaurentPolynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static LaurentPolynomial constant(std::size_t n, const Cyclo& c) {
    LaurentPolynomial p(n);
    p.addTerm(Exponent(n, 0), c);
    return p;
  }
  static LaurentPolynomial monomial(std::size_t n, Exponent e, const Cyclo& c = Cyclo(1)) {
    LaurentPolynomial p(n);
    p.addTerm(std::move(e), c);
    return p;
  }
  static LaurentPolynomial variable(std::size_t n, std::size_t i) {
    Exponent e(n, 0);
    e.at(i) = 1;
    return monomial(n, std::move(e));
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t termCount() const noexcept { return terms_.size(); }
  bool isZero() const noexcept { return terms_.empty(); }
  bool isMonomial() const noexcept { return terms_.size() == 1; }
  bool isConstant() const {
    return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](Int x) { return x == 0; }));
  }

  /// Adds c * X^e, dropping the term if it cancels.
  void addTerm(Exponent e, const Cyclo& c) {
    if (e.size() != nvars_) throw InvalidArgument("exponent length does not match number of variables");
    if (c.isZero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
      return;
    }
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }

  Cyclo coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Cyclo() : it->second;
  }

  /// Coefficient of the lex-largest exponent.
  const Cyclo& leadingCoefficient() const {
    if (terms_.empty()) throw InvalidArgument("zero polynomial has no leading coefficient");
    return terms_.rbegin()->second;
  }
  const Exponent& leadingExponent() const {
    if (terms_.empty()) throw InvalidArgument("zero polynomial has no leading exponent");
    return terms_.rbegin()->first;
  }

  /// lcm of coefficient levels.
  Int level() const {
    Int l = 1;
    for (const auto& [e, c] : terms_) l = lcmInt(l, c.level());
    return canonicalLevel(l);
  }

  std::vector<Exponent> support() const {
    std::vector<Exponent> s;
    s.reserve(terms_.size());
    for (const auto& [e, c] : terms_) s.push_back(e);
    return s;
  }

  Exponent minExponents() const {
    Exponent m(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
      first = false;
    }
    return m;
  }
  Exponent maxExponents() const {
    Exponent m(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
      first = false;
    }
    return m;
  }

  /// Total degree after removing the monomial content.
  Int totalDegree() const {
    Exponent lo = minExponents();
    Int d = 0;
    for (const auto& [e, c] : terms_) {
      Int s = 0;
      for (std::size_t i = 0; i < nvars_; ++i) s = checked::add(s, e[i] - lo[i]);
      d = std::max(d, s);
    }
    return d;
  }
  /// Width of the support in one variable.
  Int degreeIn(std::size_t var) const {
    if (terms_.empty()) return 0;
    return maxExponents()[var] - minExponents()[var];
  }
  bool involves(std::size_t var) const { return degreeIn(var) != 0; }

  /// X^s * f.
  LaurentPolynomial shifted(std::span<const Int> s) const {
    LaurentPolynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < nvars_; ++i) f[i] = checked::add(f[i], s[i]);
      r.terms_.emplace_hint(r.terms_.end(), std::move(f), c);
    }
    return r;
  }

  /// Multiply by a monomial so that every variable has minimal exponent zero.
  LaurentPolynomial withoutMonomialContent() const {
    Exponent lo = minExponents();
    for (auto& x : lo) x = -x;
    return shifted(lo);
  }
  bool hasNonnegativeExponents() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
      return std::all_of(t.first.begin(), t.first.end(), [](Int x) { return x >= 0; });
    });
  }

  LaurentPolynomial mapCoefficients(const std::function<Cyclo(const Cyclo&)>& fn) const {
    LaurentPolynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.addTerm(e, fn(c));
    return r;
  }
  /// Applies an exponent map into a space with `targetVars` variables, collecting terms.
  LaurentPolynomial mapExponents(std::size_t targetVars, const std::function<Exponent(const Exponent&)>& fn) const {
    LaurentPolynomial r(targetVars);
    for (const auto& [e, c] : terms_) r.addTerm(fn(e), c);
    return r;
  }
  /// Term-wise coefficient map that may depend on the exponent.
  LaurentPolynomial mapTerms(const std::function<Cyclo(const Exponent&, const Cyclo&)>& fn) const {
    LaurentPolynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.addTerm(e, fn(e, c));
    return r;
  }

  LaurentPolynomial operator-() const {
    LaurentPolynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  LaurentPolynomial& operator+=(const LaurentPolynomial& b) {
    checkCompatible(b);
    for (const auto& [e, c] : b.terms_) addTerm(e, c);
    return *this;
  }
  LaurentPolynomial& operator-=(const LaurentPolynomial& b) {
    checkCompatible(b);
    for (const auto& [e, c] : b.terms_) addTerm(e, -c);
    return *this;
  }
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    a.checkCompatible(b);
    LaurentPolynomial r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(a.nvars_);
        for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = checked::add(ea[i], eb[i]);
        r.addTerm(std::move(e), ca * cb);
      }
    return r;
  }
  friend LaurentPolynomial operator*(const Cyclo& s, const LaurentPolynomial& a) {
    if (s.isZero()) return LaurentPolynomial(a.nvars_);
    LaurentPolynomial r = a;
    for (auto& [e, c] : r.terms_) c = s * c;
    return r;
  }
  LaurentPolynomial& operator*=(const LaurentPolynomial& b) { return *this = *this * b; }

  LaurentPolynomial power(Int k) const {
    if (k < 0) throw InvalidArgument("negative power of a polynomial");
    LaurentPolynomial r = constant(nvars_, Cyclo(1)), base = *this;
    while (k > 0) {
      if (k & 1) r *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return r;
  }

  /// Divide all coefficients by the leading one.
  LaurentPolynomial monic() const {
    if (terms_.empty()) return *this;
    return leadingCoefficient().inverse() * *this;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    auto ib = b.terms_.begin();
    for (auto ia = a.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
      if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
  }

  std::string toString(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      bool unitCoeff = it->second == Cyclo(1);
      bool allZero = std::all_of(it->first.begin(), it->first.end(), [](Int x) { return x == 0; });
      if (!unitCoeff || allZero) os << "(" << it->second << ")";
      bool needStar = !unitCoeff;
      for (std::size_t i = 0; i < nvars_; ++i) {
        Int x = it->first[i];
        if (x == 0) continue;
        if (needStar) os << "*";
        needStar = true;
        os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
        if (x != 1) os << "^" << (x < 0 ? "(" + std::to_string(x) + ")" : std::to_string(x));
      }
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const LaurentPolynomial& p) { return os << p.toString(); }

 private:
  void checkCompatible(const LaurentPolynomial& b) const {
    if (b.nvars_ != nvars_) throw InvalidArgument("polynomials live in different numbers of variables");
  }

  std::size_t nvars_;
  TermMap terms_;
};

using LaurentSystem = std::vector<LaurentPolynomial>;

// ---------------------------------------------------------------------------------------------
// Evaluation at torsion points.

namespace detail {

inline std::complex<double> unitComplex(const RootOfUnity& r) {
  double angle = 2.0 * std::numbers::pi * static_cast<double>(r.num()) / static_cast<double>(r.den());
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace detail

/// Exact value f(omega).
inline Cyclo evaluate(const LaurentPolynomial& f, const TorsionPoint& q) {
  if (q.size() != f.nvars()) throw InvalidArgument("evaluate: point dimension mismatch");
  if (f.isZero()) return Cyclo();
  Int m = lcmInt(pointOrder(q), f.level());
  if (m % 4 == 2) m *= 2;
  std::vector<Rational> dense(static_cast<std::size_t>(m), Rational(0));
  for (const auto& [e, c] : f.terms()) {
    RootOfUnity r = pointPower(q, e);
    Int base = r.num() * (m / r.den());
    Int step = m / c.level();
    const auto& coords = c.coords();
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (coords[j] != 0) dense[static_cast<std::size_t>((base + static_cast<Int>(j) * step) % m)] += coords[j];
  }
  return Cyclo(m, detail::reduceModCyclotomic(std::move(dense), m)).normalized();
}

/// Whether f(omega) = 0. A floating-point pass certifies only nonvanishing; zero is confirmed exactly.
inline bool vanishesAt(const LaurentPolynomial& f, const TorsionPoint& q) {
  if (f.isZero()) return true;
  std::complex<double> approx = 0;
  double scale = 0;
  std::size_t work = 0;
  for (const auto& [e, c] : f.terms()) {
    approx += c.toComplex() * detail::unitComplex(pointPower(q, e));
    scale += c.magnitudeBound();
    work += c.coords().size() + 4;
  }
  if (std::abs(approx) > 1e-12 * static_cast<double>(work) * scale) return false;
  return evaluate(f, q).isZero();
}

/// Substitute X_var = omega, producing a polynomial in the remaining n-1 variables.
inline LaurentPolynomial substituteTorsion(const LaurentPolynomial& f, const RootOfUnity& omega, std::size_t var) {
  const std::size_t n = f.nvars();
  if (var >= n) throw InvalidArgument("substituteTorsion: variable index out of range");
  LaurentPolynomial r(n - 1);
  for (const auto& [e, c] : f.terms()) {
    Exponent rest;
    rest.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
      if (i != var) rest.push_back(e[i]);
    r.addTerm(std::move(rest), c * (e[var] * omega).value());
  }
  return r;
}

/// Substitute X_1..X_k = omega_1..omega_k; the result lives in the last n-k variables.
inline LaurentPolynomial substituteTorsionPrefix(const LaurentPolynomial& f, const TorsionPoint& prefix) {
  const std::size_t n = f.nvars(), k = prefix.size();
  if (k > n) throw InvalidArgument("substituteTorsionPrefix: prefix longer than variable count");
  LaurentPolynomial r(n - k);
  for (const auto& [e, c] : f.terms()) {
    RootOfUnity w = pointPower(prefix, std::span<const Int>(e.data(), k));
    r.addTerm(Exponent(e.begin() + static_cast<std::ptrdiff_t>(k), e.end()), w.isOne() ? c : c * w.value());
  }
  return r;
}

/// Keep only variable `var`, substituting the given values for all others (entry `var` ignored).
inline LaurentPolynomial specializeAllBut(const LaurentPolynomial& f, const TorsionPoint& values, std::size_t var) {
  const std::size_t n = f.nvars();
  LaurentPolynomial r(1);
  for (const auto& [e, c] : f.terms()) {
    RootOfUnity w;
    for (std::size_t i = 0; i < n; ++i)
      if (i != var && e[i] != 0) w = w + e[i] * values[i];
    r.addTerm(Exponent{e[var]}, w.isOne() ? c : c * w.value());
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Substitutions of monomial type.

/// The monoidal transformation: with X = Y^U, the term c X^i becomes c Y^j where j U = i.
inline LaurentPolynomial monoidalImage(const LaurentPolynomial& f, const IntMatrix& u) {
  const std::size_t n = f.nvars();
  if (u.size() != n) throw InvalidArgument("monoidalImage: matrix size mismatch");
  IntMatrix v = inverseUnimodular(u);
  return f.mapExponents(n, [&](const Exponent& i) { return rowTimes<Int>(i, v, n); });
}

/// f(X^s) for X_i -> X_i^{s_i}.
inline LaurentPolynomial scaleExponents(const LaurentPolynomial& f, std::span<const Int> s) {
  return f.mapExponents(f.nvars(), [&](const Exponent& e) {
    Exponent r = e;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked::mul(r[i], s[i]);
    return r;
  });
}

/// f(eps_1 X_1^k, ..., eps_n X_n^k) with eps_i = +-1 given by the bits of `signs`.
inline LaurentPolynomial signPowerSubstitution(const LaurentPolynomial& f, unsigned long signs, Int k) {
  return f.mapExponents(f.nvars(), [&](const Exponent& e) {
    Exponent r = e;
    for (auto& x : r) x = checked::mul(x, k);
    return r;
  }).mapTerms([&](const Exponent& e, const Cyclo& c) {
    Int parity = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if ((signs >> i) & 1UL) parity += floorMod(e[i] / k, Int(2));
    return parity % 2 ? -c : c;
  });
}

/// Apply zeta_N -> zeta_N^k to every coefficient, at the common level N of f.
inline LaurentPolynomial galoisConjugate(const LaurentPolynomial& f, Int k, Int level) {
  return f.mapCoefficients([&](const Cyclo& c) { return c.liftTo(level).galois(k).normalized(); });
}

/// Add dummy variables (or reorder): new polynomial in `target` variables, old variable i -> slot map[i].
inline LaurentPolynomial embedVariables(const LaurentPolynomial& f, std::size_t target, const std::vector<std::size_t>& map) {
  return f.mapExponents(target, [&](const Exponent& e) {
    Exponent r(target, 0);
    for (std::size_t i = 0; i < e.size(); ++i) r[map[i]] = e[i];
    return r;
  });
}

/// Drop variables that do not occur; returns the reduced polynomial and the kept indices.
inline std::pair<LaurentPolynomial, std::vector<std::size_t>> compressVariables(const LaurentPolynomial& f) {
  std::vector<std::size_t> kept;
  Exponent lo = f.minExponents(), hi = f.maxExponents();
  for (std::size_t i = 0; i < f.nvars(); ++i)
    if (lo[i] != hi[i]) kept.push_back(i);
  LaurentPolynomial g = f.withoutMonomialContent().mapExponents(kept.size(), [&](const Exponent& e) {
    Exponent r;
    for (auto i : kept) r.push_back(e[i]);
    return r;
  });
  return {std::move(g), std::move(kept)};
}

// ---------------------------------------------------------------------------------------------
// Support data.

struct SupportData {
  std::vector<Exponent> support;
  IntegerLattice lattice;  ///< spanned by differences of support points
};

inline SupportData supportAndLattice(const LaurentPolynomial& f) {
  SupportData d{f.support(), IntegerLattice(f.nvars())};
  if (d.support.size() > 1) {
    IntMatrix diffs;
    for (std::size_t k = 1; k < d.support.size(); ++k) {
      Exponent v(f.nvars());
      for (std::size_t i = 0; i < f.nvars(); ++i) v[i] = checked::sub(d.support[k][i], d.support[0][i]);
      diffs.push_back(std::move(v));
    }
    d.lattice = IntegerLattice(diffs, f.nvars());
  }
  return d;
}

/// Group terms by the value of i G^T: f = sum_j f_j with the exponents of f_j in one class.
inline std::map<IntVector, LaurentPolynomial> cosetSlices(const LaurentPolynomial& f, const IntMatrix& g) {
  std::map<IntVector, LaurentPolynomial> slices;
  for (const auto& [e, c] : f.terms()) {
    IntVector key(g.size());
    for (std::size_t r = 0; r < g.size(); ++r) key[r] = dot<Int>(e, g[r]);
    auto it = slices.try_emplace(key, f.nvars()).first;
    it->second.addTerm(e, c);
  }
  return slices;
}

}  // namespace torsion
