#pragma once

// Division, gcd, resultants and cyclotomic root finding for Laurent polynomials.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "torsion/poly.hpp"

namespace torsion {

namespace detail {

// Exact division of ordinary polynomials (nonnegative exponents) by lex-leading terms.
inline std::optional<LaurentPolynomial> dividePolynomial(LaurentPolynomial r, const LaurentPolynomial& g) {
  const std::size_t n = g.nvars();
  LaurentPolynomial q(n);
  const Exponent& lg = g.leadingExponent();
  Cyclo lcInv = g.leadingCoefficient().inverse();
  while (!r.isZero()) {
    Exponent e = r.leadingExponent();
    for (std::size_t i = 0; i < n; ++i) {
      e[i] -= lg[i];
      if (e[i] < 0) return std::nullopt;
    }
    Cyclo c = r.leadingCoefficient() * lcInv;
    q.addTerm(e, c);
    for (const auto& [ge, gc] : g.terms()) {
      Exponent t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = ge[i] + e[i];
      r.addTerm(std::move(t), -(c * gc));
    }
  }
  return q;
}

}  // namespace detail

/// f / g if g divides f up to a monomial factor (the quotient carries the monomial correction).
inline std::optional<LaurentPolynomial> divideExact(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  if (g.isZero()) throw DivisionByZero();
  if (f.isZero()) return LaurentPolynomial(f.nvars());
  Exponent lf = f.minExponents(), lg = g.minExponents();
  Exponent negF = lf, negG = lg;
  for (auto& x : negF) x = -x;
  for (auto& x : negG) x = -x;
  auto q = detail::dividePolynomial(f.shifted(negF), g.shifted(negG));
  if (!q) return std::nullopt;
  Exponent back(f.nvars());
  for (std::size_t i = 0; i < back.size(); ++i) back[i] = lf[i] - lg[i];
  return q->shifted(back);
}

/// Coefficients of f as a polynomial in X_var (exponents shifted to start at 0); the
/// coefficient polynomials keep all n variables with the X_var exponent set to 0.
inline std::vector<LaurentPolynomial> coefficientsIn(const LaurentPolynomial& f, std::size_t var) {
  Int lo = f.isZero() ? 0 : f.minExponents()[var];
  std::vector<LaurentPolynomial> coeffs(static_cast<std::size_t>(f.degreeIn(var)) + 1, LaurentPolynomial(f.nvars()));
  for (const auto& [e, c] : f.terms()) {
    Exponent rest = e;
    rest[var] = 0;
    coeffs[static_cast<std::size_t>(e[var] - lo)].addTerm(std::move(rest), c);
  }
  return coeffs;
}

inline LaurentPolynomial fromCoefficientsIn(const std::vector<LaurentPolynomial>& coeffs, std::size_t var, std::size_t n) {
  LaurentPolynomial f(n);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& [e, c] : coeffs[k].terms()) {
      Exponent t = e;
      t[var] = static_cast<Int>(k);
      f.addTerm(std::move(t), c);
    }
  return f;
}

/// Canonical associate: no monomial content, lex-leading coefficient 1.
inline LaurentPolynomial normalizeAssociate(const LaurentPolynomial& f) {
  if (f.isZero()) return f;
  return f.withoutMonomialContent().monic();
}

namespace detail {

inline std::optional<std::size_t> highestVariable(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  for (std::size_t v = a.nvars(); v-- > 0;)
    if (a.involves(v) || b.involves(v)) return v;
  return std::nullopt;
}

}  // namespace detail

inline LaurentPolynomial multivariateGcd(const LaurentPolynomial& f, const LaurentPolynomial& g);

/// gcd of the coefficients of f with respect to X_var.
inline LaurentPolynomial contentIn(const LaurentPolynomial& f, std::size_t var) {
  auto coeffs = coefficientsIn(f, var);
  LaurentPolynomial c(f.nvars());
  for (const auto& k : coeffs) {
    if (k.isZero()) continue;
    c = multivariateGcd(c, k);
    if (c.isConstant()) break;
  }
  return c;
}

inline LaurentPolynomial primitivePartIn(const LaurentPolynomial& f, std::size_t var) {
  if (f.isZero()) return f;
  LaurentPolynomial c = contentIn(f, var);
  if (c.isConstant()) return normalizeAssociate(f);
  auto q = divideExact(f, c);
  if (!q) throw Error("internal error: content does not divide polynomial");
  return normalizeAssociate(*q);
}

namespace detail {

// a <- lc(b)^k a - q b until deg_var(a) < deg_var(b); a and b without monomial content in var.
inline LaurentPolynomial pseudoRemainder(LaurentPolynomial a, const LaurentPolynomial& b, std::size_t var) {
  const std::size_t n = a.nvars();
  auto bc = coefficientsIn(b, var);
  const LaurentPolynomial& lcb = bc.back();
  Int db = static_cast<Int>(bc.size()) - 1;
  for (;;) {
    if (a.isZero()) return a;
    a = a.shifted([&] {
      Exponent s(n, 0);
      s[var] = -a.minExponents()[var];
      return s;
    }());
    auto ac = coefficientsIn(a, var);
    Int da = static_cast<Int>(ac.size()) - 1;
    if (da < db) return a;
    Exponent shift(n, 0);
    shift[var] = da - db;
    a = lcb * a - ac.back() * b.shifted(shift);
  }
}

}  // namespace detail

/// Greatest common divisor in the Laurent ring, normalized (no monomial content, monic).
inline LaurentPolynomial multivariateGcd(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  if (f.nvars() != g.nvars()) throw InvalidArgument("multivariateGcd: variable count mismatch");
  if (f.isZero()) return normalizeAssociate(g);
  if (g.isZero()) return normalizeAssociate(f);
  LaurentPolynomial a = f.withoutMonomialContent(), b = g.withoutMonomialContent();
  auto var = detail::highestVariable(a, b);
  const std::size_t n = f.nvars();
  if (!var) return LaurentPolynomial::constant(n, Cyclo(1));
  std::size_t v = *var;
  if (!a.involves(v)) return multivariateGcd(a, contentIn(b, v));
  if (!b.involves(v)) return multivariateGcd(b, contentIn(a, v));

  LaurentPolynomial ca = contentIn(a, v), cb = contentIn(b, v);
  LaurentPolynomial c = multivariateGcd(ca, cb);
  a = primitivePartIn(a, v);
  b = primitivePartIn(b, v);
  if (a.degreeIn(v) < b.degreeIn(v)) std::swap(a, b);
  while (!b.isZero() && b.involves(v)) {
    LaurentPolynomial r = detail::pseudoRemainder(a, b, v);
    a = std::move(b);
    b = r.isZero() ? r : primitivePartIn(r, v);
  }
  LaurentPolynomial h = b.isZero() ? primitivePartIn(a, v) : LaurentPolynomial::constant(n, Cyclo(1));
  return normalizeAssociate(c * h);
}

/// Formal partial derivative with respect to X_var (on the monomial-free representative).
inline LaurentPolynomial derivative(const LaurentPolynomial& f, std::size_t var) {
  LaurentPolynomial r(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    Exponent t = e;
    t[var] -= 1;
    r.addTerm(std::move(t), c * Cyclo(static_cast<long>(e[var])));
  }
  return r;
}

/// Squarefree part of a univariate polynomial.
inline LaurentPolynomial squarefreePart(const LaurentPolynomial& f) {
  if (f.nvars() != 1) throw InvalidArgument("squarefreePart: expected a univariate polynomial");
  LaurentPolynomial a = normalizeAssociate(f);
  if (a.degreeIn(0) <= 1) return a;
  LaurentPolynomial g = multivariateGcd(a, derivative(a, 0));
  if (g.isConstant()) return a;
  auto q = divideExact(a, g);
  return normalizeAssociate(*q);
}

// ---------------------------------------------------------------------------------------------
// Resultants.

namespace detail {

// Determinant over the cyclotomic field by Gaussian elimination.
inline Cyclo fieldDeterminant(std::vector<std::vector<Cyclo>> m) {
  const std::size_t n = m.size();
  Cyclo det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].isZero()) ++p;
    if (p == n) return Cyclo();
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Cyclo inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].isZero()) continue;
      Cyclo factor = m[r][c] * inv;
      for (std::size_t k = c + 1; k < n; ++k)
        if (!m[c][k].isZero()) m[r][k] -= factor * m[c][k];
    }
  }
  return det;
}

// Fraction-free determinant over the polynomial ring.
inline LaurentPolynomial polynomialDeterminant(std::vector<std::vector<LaurentPolynomial>> m, std::size_t nvars) {
  const std::size_t n = m.size();
  LaurentPolynomial prev = LaurentPolynomial::constant(nvars, Cyclo(1));
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k].isZero()) ++p;
    if (p == n) return LaurentPolynomial(nvars);
    if (p != k) {
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPolynomial t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = divideExact(t, prev);
        if (!q) throw Error("internal error: Bareiss division failed");
        m[i][j] = std::move(*q);
      }
      m[i][k] = LaurentPolynomial(nvars);
    }
    prev = m[k][k];
  }
  LaurentPolynomial d = n == 0 ? LaurentPolynomial::constant(nvars, Cyclo(1)) : m[n - 1][n - 1];
  return negate ? -d : d;
}

}  // namespace detail

/// Res_{X_var}(f, g) on the representatives without monomial content, as a polynomial in the
/// remaining n-1 variables. Both inputs must involve X_var.
inline LaurentPolynomial univariateResultant(const LaurentPolynomial& f, const LaurentPolynomial& g, std::size_t var) {
  const std::size_t n = f.nvars();
  if (g.nvars() != n || var >= n) throw InvalidArgument("univariateResultant: bad arguments");
  if (!f.involves(var) || !g.involves(var)) throw InvalidArgument("univariateResultant: degree zero in the eliminated variable");
  auto dropVar = [&](const LaurentPolynomial& p) {
    return p.mapExponents(n - 1, [&](const Exponent& e) {
      Exponent r;
      for (std::size_t i = 0; i < n; ++i)
        if (i != var) r.push_back(e[i]);
      return r;
    });
  };
  std::vector<LaurentPolynomial> fc, gc;
  for (auto& c : coefficientsIn(f.withoutMonomialContent(), var)) fc.push_back(dropVar(c));
  for (auto& c : coefficientsIn(g.withoutMonomialContent(), var)) gc.push_back(dropVar(c));
  const std::size_t m = fc.size() - 1, k = gc.size() - 1, size = m + k;
  const std::size_t rest = n - 1;

  // Variables occurring in the coefficients.
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < rest; ++i) {
    bool occurs = false;
    for (const auto* side : {&fc, &gc})
      for (const auto& c : *side)
        for (const auto& [e, cc] : c.terms())
          if (e[i] != 0) occurs = true;
    if (occurs) live.push_back(i);
  }

  auto sylvester = [&](auto coeffAt) {
    using Entry = decltype(coeffAt(fc[0]));
    std::vector<std::vector<Entry>> s(size, std::vector<Entry>(size, coeffAt(LaurentPolynomial(rest))));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t j = 0; j <= m; ++j) s[r][r + j] = coeffAt(fc[m - j]);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t j = 0; j <= k; ++j) s[k + r][r + j] = coeffAt(gc[k - j]);
    return s;
  };

  if (live.empty()) {
    auto s = sylvester([](const LaurentPolynomial& c) { return c.isZero() ? Cyclo() : c.terms().begin()->second; });
    return LaurentPolynomial::constant(rest, detail::fieldDeterminant(std::move(s)));
  }
  if (live.size() == 1) {
    // Evaluate at integer points and interpolate.
    const std::size_t w = live[0];
    Int degF = 0, degG = 0;
    for (const auto& c : fc)
      for (const auto& [e, cc] : c.terms()) degF = std::max(degF, e[w]);
    for (const auto& c : gc)
      for (const auto& [e, cc] : c.terms()) degG = std::max(degG, e[w]);
    const Int bound = static_cast<Int>(k) * degF + static_cast<Int>(m) * degG;
    std::vector<Cyclo> values;
    for (Int x = 0; x <= bound; ++x) {
      Rational xr(x);
      auto s = sylvester([&](const LaurentPolynomial& c) {
        Cyclo v;
        for (const auto& [e, cc] : c.terms()) {
          Rational p = 1;
          for (Int t = 0; t < e[w]; ++t) p *= xr;
          v += cc.scaled(p);
        }
        return v;
      });
      values.push_back(detail::fieldDeterminant(std::move(s)));
    }
    // Newton divided differences on nodes 0..bound.
    const std::size_t cnt = values.size();
    std::vector<Cyclo> dd = values;
    for (std::size_t j = 1; j < cnt; ++j)
      for (std::size_t i = cnt - 1; i >= j; --i) {
        dd[i] = (dd[i] - dd[i - 1]).scaled(Rational(1, static_cast<long>(j)));
        if (i == j) break;
      }
    // Expand sum dd[j] prod_{t<j} (x - t) into the monomial basis.
    std::vector<Cyclo> poly(cnt), basis(cnt);
    basis[0] = Cyclo(1);
    for (std::size_t j = 0; j < cnt; ++j) {
      if (!dd[j].isZero())
        for (std::size_t t = 0; t <= j; ++t)
          if (!basis[t].isZero()) poly[t] += dd[j] * basis[t];
      if (j + 1 < cnt) {
        for (std::size_t t = j + 1; t-- > 0;) {
          Cyclo shiftedDown = basis[t].scaled(Rational(-static_cast<long>(j)));
          basis[t + 1] += basis[t];
          basis[t] = shiftedDown;
          if (t == 0) break;
        }
      }
    }
    LaurentPolynomial r(rest);
    for (std::size_t t = 0; t < cnt; ++t) {
      Exponent e(rest, 0);
      e[w] = static_cast<Int>(t);
      r.addTerm(std::move(e), poly[t]);
    }
    return r;
  }
  auto s = sylvester([](const LaurentPolynomial& c) { return c; });
  return detail::polynomialDeterminant(std::move(s), rest);
}

// ---------------------------------------------------------------------------------------------
// Cyclotomic roots of univariate polynomials.

namespace detail {

// Largest d that can satisfy phi(d) <= bound, from phi(d) > d / (e^gamma lnln d + 3 / lnln d), d >= 3.
inline Int orderSearchLimit(Int bound) {
  Int x = 30;
  for (;;) {
    double ll = std::log(std::log(static_cast<double>(x)));
    double lower = static_cast<double>(x) / (1.7811 * ll + 3.0 / ll);
    if (lower > 2.0 * static_cast<double>(bound)) return x;
    x *= 2;
  }
}

inline std::vector<Int> phiTable(Int limit) {
  std::vector<Int> phi(static_cast<std::size_t>(limit) + 1);
  for (Int i = 0; i <= limit; ++i) phi[static_cast<std::size_t>(i)] = i;
  for (Int p = 2; p <= limit; ++p)
    if (phi[static_cast<std::size_t>(p)] == p)
      for (Int q = p; q <= limit; q += p) phi[static_cast<std::size_t>(q)] -= phi[static_cast<std::size_t>(q)] / p;
  return phi;
}

}  // namespace detail

/// All roots of unity that are roots of the univariate polynomial f, sorted.
inline std::vector<RootOfUnity> cyclotomicRoots(const LaurentPolynomial& f) {
  if (f.nvars() != 1) throw InvalidArgument("cyclotomicRoots: expected a univariate polynomial");
  if (f.isZero()) throw InvalidArgument("cyclotomicRoots: zero polynomial");
  LaurentPolynomial h = normalizeAssociate(f);
  if (h.degreeIn(0) == 0) return {};
  h = squarefreePart(h);
  const Int deg = h.degreeIn(0);
  const Int level = h.level();
  const Int phiN = eulerPhi(level);
  const Int bound = checked::mul(deg, phiN);
  const Int limit = detail::orderSearchLimit(bound);
  auto phi = detail::phiTable(limit);

  // Precompute coefficient values for the float filter.
  std::vector<std::pair<Int, std::complex<double>>> approx;
  double scale = 0;
  std::size_t work = 0;
  for (const auto& [e, c] : h.terms()) {
    approx.emplace_back(e[0], c.toComplex());
    scale += c.magnitudeBound();
    work += c.coords().size() + 4;
  }
  const double tolerance = 1e-12 * static_cast<double>(work) * scale;

  std::vector<RootOfUnity> roots;
  for (Int d = 1; d <= limit; ++d) {
    Int l = canonicalLevel(lcmInt(d, level));
    if (l > limit || phi[static_cast<std::size_t>(l)] > bound) continue;
    for (Int a = 0; a < d; ++a) {
      if (std::gcd(a, d) != 1) continue;
      std::complex<double> v = 0;
      for (const auto& [k, c] : approx) {
        double angle = 2.0 * std::numbers::pi * static_cast<double>(floorMod(checked::mul(k, a), d)) / static_cast<double>(d);
        v += c * std::complex<double>(std::cos(angle), std::sin(angle));
      }
      if (std::abs(v) > tolerance) continue;
      RootOfUnity r(a, d);
      if (evaluate(h, {r}).isZero()) {
        roots.push_back(r);
        if (static_cast<Int>(roots.size()) == deg) break;
      }
    }
    if (static_cast<Int>(roots.size()) == deg) break;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace torsion
