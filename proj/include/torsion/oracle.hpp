#pragma once

// Exhaustive search for torsion points of bounded order, and comparison with solver output.

#include <algorithm>
#include <complex>
#include <numbers>
#include <vector>

#include "torsion/coset.hpp"

namespace torsion {

struct OracleReport {
  Int maxOrder = 0;
  std::vector<TorsionPoint> points;
  std::vector<TorsionPoint> missedBySolver;
  std::vector<TorsionCoset> spuriousCosets;

  bool passed() const { return missedBySolver.empty() && spuriousCosets.empty(); }
};

namespace detail {

// Number of points of exact order m in (Q/Z)^n (Jordan's totient J_n(m)).
inline BigInt exactOrderCount(Int m, std::size_t n) {
  BigInt j;
  mpz_ui_pow_ui(j.get_mpz_t(), static_cast<unsigned long>(m), n);
  Int rest = m;
  for (Int p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    while (rest % p == 0) rest /= p;
    BigInt pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p), n);
    j = j / pn * (pn - 1);
  }
  if (rest > 1) {
    BigInt pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(rest), n);
    j = j / pn * (pn - 1);
  }
  return j;
}

inline bool lexLess(const TorsionPoint& a, const TorsionPoint& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const RootOfUnity& x, const RootOfUnity& y) { return x.asRational() < y.asRational(); });
}

}  // namespace detail

/// Number of torsion points of order at most maxOrder in n-space.
inline BigInt torsionPointCount(Int maxOrder, std::size_t n) {
  BigInt total = 0;
  for (Int m = 1; m <= maxOrder; ++m) total += detail::exactOrderCount(m, n);
  return total;
}

/// All torsion points of order at most maxOrder on the variety, in lexicographic order.
inline std::vector<TorsionPoint> bruteForcePoints(const LaurentSystem& system, Int maxOrder, std::size_t budget = 50000000) {
  if (system.empty()) throw InvalidArgument("bruteForcePoints: empty system");
  if (maxOrder < 1) throw InvalidArgument("bruteForcePoints: maxOrder must be positive");
  const std::size_t n = system[0].nvars();
  for (const auto& f : system)
    if (f.nvars() != n) throw InvalidArgument("bruteForcePoints: polynomials in different numbers of variables");
  BigInt attempted = torsionPointCount(maxOrder, n) * static_cast<unsigned long>(std::max<std::size_t>(n, 1));
  if (attempted > budget) throw BudgetExceeded("torsion point enumeration", attempted.fits_ulong_p() ? attempted.get_ui() : SIZE_MAX);

  struct Term {
    Exponent e;
    std::complex<double> c;
  };
  std::vector<std::vector<Term>> terms(system.size());
  std::vector<double> scale(system.size(), 0);
  for (std::size_t k = 0; k < system.size(); ++k)
    for (const auto& [e, c] : system[k].terms()) {
      terms[k].push_back({e, c.toComplex()});
      scale[k] += std::abs(terms[k].back().c);
    }

  std::vector<TorsionPoint> out;
  for (Int m = 1; m <= maxOrder; ++m) {
    std::vector<std::complex<double>> unit(static_cast<std::size_t>(m));
    for (Int k = 0; k < m; ++k) unit[static_cast<std::size_t>(k)] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
    std::vector<Int> a(n, 0);
    for (;;) {
      Int g = m;
      for (Int x : a) g = std::gcd(g, x);
      if (g == 1) {
        bool ok = true;
        for (std::size_t k = 0; k < system.size() && ok; ++k) {
          std::complex<double> v = 0;
          for (const auto& t : terms[k]) {
            Int s = 0;
            for (std::size_t i = 0; i < n; ++i) s += t.e[i] * a[i];
            v += t.c * unit[static_cast<std::size_t>(floorMod(s, m))];
          }
          ok = std::abs(v) <= 1e-8 * (1 + scale[k]);
        }
        if (ok) {
          TorsionPoint q(n);
          for (std::size_t i = 0; i < n; ++i) q[i] = RootOfUnity(a[i], m);
          bool exact = true;
          for (const auto& f : system)
            if (!evaluate(f, q).isZero()) {
              exact = false;
              break;
            }
          if (exact) out.push_back(std::move(q));
        }
      }
      std::size_t pos = 0;
      while (pos < n && ++a[pos] == m) a[pos++] = 0;
      if (pos == n) break;
    }
  }
  std::sort(out.begin(), out.end(), detail::lexLess);
  return out;
}

/// Compare solver cosets with the oracle points of order at most maxOrder.
inline OracleReport crossCheck(const std::vector<TorsionCoset>& cosets, const LaurentSystem& system, Int maxOrder,
                               std::size_t budget = 50000000) {
  OracleReport r;
  r.maxOrder = maxOrder;
  r.points = bruteForcePoints(system, maxOrder, budget);
  for (const auto& q : r.points)
    if (std::none_of(cosets.begin(), cosets.end(), [&](const TorsionCoset& c) { return c.contains(q); })) r.missedBySolver.push_back(q);
  for (const auto& c : cosets)
    if (!liesOnVariety(c, system)) r.spuriousCosets.push_back(c);
  return r;
}

}  // namespace torsion
