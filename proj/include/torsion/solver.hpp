#pragma once

// Maximal torsion cosets of hypersurfaces and of varieties in the torus.
//
// A hypersurface is handled in stages: binomial factors X^a - theta with theta a root of unity are
// split off first; the rest is reduced to a polynomial whose exponent lattice is all of Z^n
// (by a unimodular change of variables when the lattice has lower rank and by pulling back along
// the isogeny of the lattice otherwise). For such a polynomial a family of companion polynomials
// with no common factor is built so that every torsion coset of f lies on one of them; the last
// variable is then eliminated with resultants and the cosets of the resultants are lifted back.

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <set>
#include <thread>
#include <utility>
#include <vector>

#include "torsion/algebra.hpp"
#include "torsion/coset.hpp"

namespace torsion {

struct SolveOptions {
  std::size_t budget = 1000000;  ///< congruence classes per pullback and shifts tried by normalization
  unsigned threads = 1;          ///< worker threads for independent resultant branches
};

struct SolveStats {
  std::atomic<std::size_t> binomialFactors{0};
  std::atomic<std::size_t> companionsDropped{0};  ///< companions divisible by f itself
  std::atomic<std::size_t> splits{0};             ///< proper factors found through a companion gcd
  std::atomic<std::size_t> resultants{0};
};

// ---------------------------------------------------------------------------------------------
// Companion polynomials.

/// Result of twisting variables by roots of unity and scaling so the coefficients generate the
/// smallest possible cyclotomic field.
struct LevelNormalization {
  Int level = 1;         ///< N, canonical
  Int modulus = 1;       ///< M; the twist is X_i -> zeta_M^{shift_i} X_i
  IntVector shift;
  LaurentPolynomial polynomial;
};

inline LevelNormalization minimalLevelNormalize(const LaurentPolynomial& f, std::size_t budget = 1000000) {
  const std::size_t n = f.nvars();
  if (f.isZero()) throw InvalidArgument("minimalLevelNormalize: zero polynomial");
  std::vector<std::pair<Exponent, Cyclo>> terms(f.terms().begin(), f.terms().end());
  const Exponent base = terms[0].first;
  const Cyclo baseInv = terms[0].second.inverse();
  std::vector<Cyclo> ratios;
  std::vector<Exponent> offsets;
  Int lcmLevel = 1;
  for (const auto& [e, c] : terms) {
    ratios.push_back((c * baseInv).normalized());
    Exponent d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = checked::sub(e[i], base[i]);
    offsets.push_back(std::move(d));
    lcmLevel = lcmInt(lcmLevel, ratios.back().level());
  }
  LevelNormalization out;
  out.shift.assign(n, 0);
  out.level = canonicalLevel(lcmLevel);
  out.modulus = 1;
  if (out.level > 1) {
    const Int m = 2 * lcmLevel;
    // Minimal level of ratio_t * zeta_m^k for each term and each k.
    std::vector<std::vector<Int>> table(ratios.size(), std::vector<Int>(static_cast<std::size_t>(m)));
    for (std::size_t t = 0; t < ratios.size(); ++t)
      for (Int k = 0; k < m; ++k)
        table[t][static_cast<std::size_t>(k)] = (ratios[t] * Cyclo::rootOfUnity(k, m)).normalized().level();
    double space = std::pow(static_cast<double>(m), static_cast<double>(n));
    IntVector s(n, 0);
    if (space * static_cast<double>(ratios.size()) <= static_cast<double>(budget)) {
      for (;;) {
        Int level = 1;
        for (std::size_t t = 0; t < ratios.size(); ++t) {
          Int k = 0;
          for (std::size_t i = 0; i < n; ++i) k += offsets[t][i] * s[i];
          level = lcmInt(level, table[t][static_cast<std::size_t>(floorMod(k, m))]);
        }
        level = canonicalLevel(level);
        if (level < out.level) {
          out.level = level;
          out.shift = s;
          out.modulus = m;
          if (level == 1) break;
        }
        std::size_t pos = 0;
        while (pos < n && ++s[pos] == m) s[pos++] = 0;
        if (pos == n) break;
      }
    }
  }
  LaurentPolynomial g(n);
  for (std::size_t t = 0; t < ratios.size(); ++t) {
    Int k = 0;
    for (std::size_t i = 0; i < n; ++i) k += offsets[t][i] * out.shift[i];
    g.addTerm(terms[t].first, (ratios[t] * Cyclo::rootOfUnity(k, out.modulus)).normalized());
  }
  out.polynomial = std::move(g);
  return out;
}

/// Companion polynomials of f (exponent lattice Z^n assumed): every torsion coset on V(f) lies on
/// V(f_k) for some k. Companions divisible by f are not removed here.
inline std::vector<LaurentPolynomial> auxiliaryPolynomials(const LaurentPolynomial& f, std::size_t budget = 1000000) {
  const std::size_t n = f.nvars();
  if (n == 0 || n >= 20) throw InvalidArgument("auxiliaryPolynomials: unsupported number of variables");
  LevelNormalization norm = minimalLevelNormalize(f, budget);
  const LaurentPolynomial& g = norm.polynomial;
  const unsigned long all = 1UL << n;
  std::vector<LaurentPolynomial> family;
  for (unsigned long mask = 1; mask < all; ++mask) family.push_back(signPowerSubstitution(g, mask, 1));
  const Int level = norm.level;
  if (level == 1) {
    for (unsigned long mask = 0; mask < all; ++mask) family.push_back(signPowerSubstitution(g, mask, 2));
  } else if (level % 2 == 1) {
    LaurentPolynomial conj = galoisConjugate(g, 2, level);
    for (unsigned long mask = 0; mask < all; ++mask) family.push_back(signPowerSubstitution(conj, mask, 2));
  } else {
    LaurentPolynomial conj = galoisConjugate(g, level / 2 + 1, level);
    for (unsigned long mask = 0; mask < all; ++mask) family.push_back(signPowerSubstitution(conj, mask, 1));
  }
  // Undo the twist: h(X) -> h(zeta_M^{-s} X).
  if (std::any_of(norm.shift.begin(), norm.shift.end(), [](Int x) { return x != 0; })) {
    for (auto& h : family)
      h = h.mapTerms([&](const Exponent& e, const Cyclo& c) {
        Int k = 0;
        for (std::size_t i = 0; i < n; ++i) k -= e[i] * norm.shift[i];
        return (c * Cyclo::rootOfUnity(k, norm.modulus)).normalized();
      });
  }
  return family;
}

// ---------------------------------------------------------------------------------------------

namespace detail {

// Unimodular U whose first rows span the primitive lattice with HNF basis s.
inline IntMatrix unimodularWithLeadingRows(const IntMatrix& s, std::size_t n) {
  auto h = hermiteNormalForm(transpose(s, n), s.size());
  return inverseUnimodular(transpose(h.transform, n));
}

inline IntVector primitiveDirection(IntVector v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, x);
  if (g == 0) return v;
  for (auto& x : v) x /= g;
  for (Int x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

// Runs fn over the items, on several threads when asked; results keep the input order.
template <class T, class F>
auto parallelMap(const std::vector<T>& items, unsigned threads, F fn) -> std::vector<decltype(fn(items[0]))> {
  using R = decltype(fn(items[0]));
  std::vector<R> out(items.size());
  if (threads <= 1 || items.size() <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) out[i] = fn(items[i]);
  };
  std::vector<std::future<void>> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, items.size()); ++t) pool.push_back(std::async(std::launch::async, worker));
  for (auto& p : pool) p.get();
  return out;
}

}  // namespace detail

class Solver {
 public:
  explicit Solver(SolveOptions options = {}) : options_(options) {}

  const SolveStats& stats() const noexcept { return stats_; }
  const SolveOptions& options() const noexcept { return options_; }

  /// Maximal torsion cosets of the hypersurface f = 0.
  std::vector<TorsionCoset> solveHyper(const LaurentPolynomial& f) { return solveHyperImpl(f, options_.threads); }

  /// Maximal torsion cosets of the variety defined by the system.
  std::vector<TorsionCoset> varietyCosets(const LaurentSystem& system) {
    if (system.empty()) throw InvalidArgument("varietyCosets: empty system");
    const std::size_t n = system[0].nvars();
    LaurentSystem nonzero;
    for (const auto& f : system) {
      if (f.nvars() != n) throw InvalidArgument("varietyCosets: polynomials in different numbers of variables");
      if (!f.isZero()) nonzero.push_back(f);
    }
    if (nonzero.empty()) return {TorsionCoset::wholeTorus(n)};
    if (n == 0) return {};
    std::vector<TorsionCoset> out;
    std::set<std::pair<IntVector, RootOfUnity>> visited;
    for (const auto& c : solveHyper(nonzero[0])) {
      if (liesOnVariety(c, nonzero)) {
        out.push_back(c);
        continue;
      }
      if (c.dimension() == 0) continue;
      // Solve the whole system inside the hyperplane coset X^a = omega containing c.
      IntVector a = detail::primitiveDirection(c.lattice()[0]);
      RootOfUnity omega = pointPower(c.representative(), a);
      if (!visited.insert({a, omega}).second) continue;
      IntMatrix u = extendPrimitiveToBasis(a), uInv = inverseUnimodular(u);
      LaurentSystem restricted;
      for (const auto& f : nonzero) restricted.push_back(substituteTorsion(monoidalImage(f, u), omega, 0));
      for (const auto& sub : varietyCosets(restricted)) out.push_back(transformCoset(prependFixedCoordinate(omega, sub), uInv));
    }
    return maximalFilter(std::move(out));
  }

  /// Binomial cosets {X^a = theta} on V(f), and f with those factors divided out.
  std::pair<std::vector<TorsionCoset>, LaurentPolynomial> binomialCosets(const LaurentPolynomial& f) {
    const std::size_t n = f.nvars();
    LaurentPolynomial g = f.withoutMonomialContent();
    std::vector<TorsionCoset> cosets;
    auto support = g.support();
    std::set<IntVector> directions;
    for (std::size_t i = 0; i < support.size(); ++i)
      for (std::size_t j = i + 1; j < support.size(); ++j) {
        IntVector d(n);
        for (std::size_t k = 0; k < n; ++k) d[k] = support[j][k] - support[i][k];
        directions.insert(detail::primitiveDirection(std::move(d)));
      }
    for (const auto& a : directions) {
      if (g.termCount() < 2) break;
      IntMatrix comp = orthogonalComplementLattice(IntMatrix{a}, n);
      auto slices = cosetSlices(g, comp);
      if (std::any_of(slices.begin(), slices.end(), [](const auto& s) { return s.second.termCount() < 2; })) continue;
      IntMatrix u = extendPrimitiveToBasis(a), v = inverseUnimodular(u);
      LaurentPolynomial h = monoidalImage(g, u);
      // Coefficients of h with respect to Y_2..Y_n, as polynomials in Y_1.
      std::map<IntVector, LaurentPolynomial> groups;
      for (const auto& [e, c] : h.terms()) {
        IntVector rest(e.begin() + 1, e.end());
        groups.try_emplace(rest, 1).first->second.addTerm({e[0]}, c);
      }
      LaurentPolynomial common(1);
      for (const auto& [rest, p] : groups) {
        common = multivariateGcd(common, p);
        if (common.isConstant()) break;
      }
      if (common.isConstant()) continue;
      for (const auto& theta : cyclotomicRoots(common)) {
        TorsionPoint q(n);
        for (std::size_t i = 0; i < n; ++i) q[i] = v[i][0] * theta;
        cosets.emplace_back(std::move(q), IntMatrix{a});
        LaurentPolynomial binomial = LaurentPolynomial::monomial(n, a) - LaurentPolynomial::constant(n, theta.value());
        while (auto quotient = divideExact(g, binomial)) {
          g = quotient->withoutMonomialContent();
          ++stats_.binomialFactors;
        }
      }
    }
    return {std::move(cosets), std::move(g)};
  }

 private:
  std::vector<TorsionCoset> solveHyperImpl(const LaurentPolynomial& f, unsigned threads) {
    const std::size_t n = f.nvars();
    if (f.isZero()) return {TorsionCoset::wholeTorus(n)};
    if (n == 0 || f.isMonomial()) return {};
    if (n == 1) {
      std::vector<TorsionCoset> pts;
      for (const auto& r : cyclotomicRoots(f)) pts.push_back(TorsionCoset::point({r}));
      return pts;
    }
    auto [cosets, rest] = binomialCosets(f);
    if (!rest.isConstant() && !rest.isMonomial()) {
      auto more = solveReduced(rest, threads);
      cosets.insert(cosets.end(), more.begin(), more.end());
    }
    return maximalFilter(std::move(cosets));
  }

  // f without monomial content, at least two terms, n >= 2.
  std::vector<TorsionCoset> solveReduced(const LaurentPolynomial& f, unsigned threads) {
    const std::size_t n = f.nvars();
    SupportData sd = supportAndLattice(f);
    const std::size_t r = sd.lattice.rank();
    std::vector<TorsionCoset> out;
    if (r < n) {
      // f depends only on r monomials: change variables so they are Y_1..Y_r.
      IntMatrix sat = saturation(sd.lattice.basis(), n);
      IntMatrix u = detail::unimodularWithLeadingRows(sat, n), uInv = inverseUnimodular(u);
      LaurentPolynomial h = monoidalImage(f, u).withoutMonomialContent();
      LaurentPolynomial reduced = h.mapExponents(r, [&](const Exponent& e) { return Exponent(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(r)); });
      for (const auto& c : solveHyperImpl(reduced, threads)) out.push_back(transformCoset(padFreeCoordinates(c, n), uInv));
      return out;
    }
    const IntMatrix& basis = sd.lattice.basis();
    if (!sd.lattice.isFull()) {
      // f(X) = X^{s0} f*(X^A): solve f* and pull back along the isogeny.
      const Exponent& s0 = sd.support[0];
      LaurentPolynomial star(n);
      for (const auto& [e, c] : f.terms()) {
        Exponent d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = e[i] - s0[i];
        star.addTerm(*latticeCoordinates(basis, d), c);
      }
      for (const auto& c : solveHyperImpl(star, threads)) {
        IntMatrix rows;
        std::vector<RootOfUnity> targets;
        for (const auto& b : c.lattice()) {
          rows.push_back(rowTimes<Int>(b, basis, n));
          targets.push_back(pointPower(c.representative(), b));
        }
        auto sol = solveExponentCongruences(rows, targets, n, options_.budget);
        for (auto& q : sol.classes) out.emplace_back(std::move(q), sol.homogeneous);
      }
      return maximalFilter(std::move(out));
    }
    return solveCore(f, threads);
  }

  // Exponent lattice Z^n, n >= 2.
  std::vector<TorsionCoset> solveCore(const LaurentPolynomial& f, unsigned threads) {
    const std::size_t n = f.nvars();
    const LaurentPolynomial fn = normalizeAssociate(f);
    std::vector<LaurentPolynomial> companions;
    for (auto& fk : auxiliaryPolynomials(f, options_.budget)) {
      LaurentPolynomial g = multivariateGcd(f, fk);
      if (g.isConstant()) {
        companions.push_back(std::move(fk));
        continue;
      }
      if (g == fn) {
        ++stats_.companionsDropped;
        continue;
      }
      ++stats_.splits;
      auto cofactor = divideExact(f, g);
      auto a = solveHyperImpl(g, threads), b = solveHyperImpl(*cofactor, threads);
      a.insert(a.end(), b.begin(), b.end());
      return maximalFilter(std::move(a));
    }

    // Eliminate X_n; distinct resultants only.
    std::vector<LaurentPolynomial> eliminated;
    {
      std::vector<LaurentPolynomial> res = detail::parallelMap(companions, threads, [&](const LaurentPolynomial& fk) {
        ++stats_.resultants;
        return normalizeAssociate(univariateResultant(f, fk, n - 1));
      });
      for (auto& r : res)
        if (std::find(eliminated.begin(), eliminated.end(), r) == eliminated.end()) eliminated.push_back(std::move(r));
    }
    auto projected = detail::parallelMap(eliminated, threads, [&](const LaurentPolynomial& g) { return solveHyperImpl(g, 1); });
    std::map<CosetKey, TorsionCoset> below;
    for (auto& list : projected)
      for (auto& c : list) below.emplace(c.key(), std::move(c));

    std::vector<TorsionCoset> out;
    std::set<std::pair<IntVector, RootOfUnity>> visited;
    for (const auto& [key, d] : below) {
      if (d.dimension() == 0) {
        const TorsionPoint& z = d.representative();
        LaurentPolynomial p = substituteTorsionPrefix(f, z);
        if (p.isZero()) {
          TorsionPoint q = z;
          q.push_back(RootOfUnity());
          IntMatrix lat;
          for (std::size_t i = 0; i + 1 < n; ++i) {
            IntVector row(n, 0);
            row[i] = 1;
            lat.push_back(std::move(row));
          }
          out.emplace_back(std::move(q), lat);
        } else {
          for (const auto& theta : cyclotomicRoots(p)) {
            TorsionPoint q = z;
            q.push_back(theta);
            out.push_back(TorsionCoset::point(std::move(q)));
          }
        }
        continue;
      }
      // Positive-dimensional projection: solve f on the hyperplane coset {X'^a = omega}.
      IntVector a = detail::primitiveDirection(d.lattice()[0]);
      RootOfUnity omega = pointPower(d.representative(), a);
      if (!visited.insert({a, omega}).second) continue;
      a.push_back(0);
      IntMatrix u = extendPrimitiveToBasis(a), uInv = inverseUnimodular(u);
      LaurentPolynomial restricted = substituteTorsion(monoidalImage(f, u), omega, 0);
      for (const auto& c : solveHyperImpl(restricted, 1)) out.push_back(transformCoset(prependFixedCoordinate(omega, c), uInv));
    }
    return maximalFilter(std::move(out));
  }

  SolveOptions options_;
  SolveStats stats_;
};

inline std::vector<TorsionCoset> solveHyper(const LaurentPolynomial& f, SolveOptions options = {}) {
  return Solver(options).solveHyper(f);
}

inline std::vector<TorsionCoset> varietyCosets(const LaurentSystem& system, SolveOptions options = {}) {
  return Solver(options).varietyCosets(system);
}

}  // namespace torsion
