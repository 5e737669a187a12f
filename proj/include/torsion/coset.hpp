#pragma once

// Torsion cosets omega * H_A of the torus, where H_A = {x : x^a = 1 for all a in A} and A is a
// primitive lattice held in Hermite normal form.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torsion/poly.hpp"

namespace torsion {

/// Canonical identity of a coset: the lattice and the character values of omega on its basis.
struct CosetKey {
  IntMatrix lattice;
  std::vector<RootOfUnity> pairings;
  friend bool operator==(const CosetKey&, const CosetKey&) = default;
  friend auto operator<=>(const CosetKey&, const CosetKey&) = default;
};

class TorsionCoset {
 public:
  TorsionCoset() = default;

  /// The coset through `point` with character lattice spanned by `generators` (must be primitive).
  TorsionCoset(TorsionPoint point, const IntMatrix& generators) : n_(point.size()), point_(std::move(point)) {
    if (!generators.empty()) {
      for (const auto& row : generators)
        if (row.size() != n_) throw InvalidArgument("coset lattice generator has the wrong length");
      lattice_ = hermiteNormalForm(generators, n_).basis;
    }
    if (saturation(lattice_, n_) != lattice_) throw InvalidArgument("coset lattice must be primitive");
  }

  static TorsionCoset point(TorsionPoint q) {
    const std::size_t n = q.size();
    return TorsionCoset(std::move(q), identityMatrix<Int>(n));
  }
  static TorsionCoset wholeTorus(std::size_t n) { return TorsionCoset(TorsionPoint(n), {}); }

  std::size_t ambient() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return n_ - lattice_.size(); }
  const TorsionPoint& representative() const noexcept { return point_; }
  const IntMatrix& lattice() const noexcept { return lattice_; }
  /// Rows spanning the orthogonal complement of the lattice; the coset is parametrized by them.
  IntMatrix complement() const { return orthogonalComplementLattice(lattice_, n_); }

  std::vector<RootOfUnity> pairings() const {
    std::vector<RootOfUnity> p;
    p.reserve(lattice_.size());
    for (const auto& row : lattice_) p.push_back(pointPower(point_, row));
    return p;
  }
  CosetKey key() const { return CosetKey{lattice_, pairings()}; }

  bool contains(const TorsionPoint& q) const {
    if (q.size() != n_) return false;
    for (const auto& row : lattice_)
      if (pointPower(q, row) != pointPower(point_, row)) return false;
    return true;
  }

  /// Point of the coset obtained by back substitution on the Hermite pivots with free coordinates 0.
  TorsionPoint canonicalPoint() const {
    TorsionPoint q(n_);
    auto targets = pairings();
    for (std::size_t k = lattice_.size(); k-- > 0;) {
      const auto& row = lattice_[k];
      std::size_t p = 0;
      while (row[p] == 0) ++p;
      RootOfUnity rest = targets[k];
      for (std::size_t j = p + 1; j < n_; ++j)
        if (row[j] != 0) rest = rest - row[j] * q[j];
      q[p] = RootOfUnity(rest.num(), checked::mul(rest.den(), row[p]));
    }
    return q;
  }

  std::string toString() const {
    std::string s = "{point " + pointToString(canonicalPoint()) + ", lattice [";
    for (std::size_t i = 0; i < lattice_.size(); ++i) {
      s += i ? ", (" : "(";
      for (std::size_t j = 0; j < n_; ++j) s += (j ? "," : "") + std::to_string(lattice_[i][j]);
      s += ")";
    }
    return s + "]}";
  }

  friend bool operator==(const TorsionCoset& a, const TorsionCoset& b) { return a.n_ == b.n_ && a.key() == b.key(); }

 private:
  std::size_t n_ = 0;
  TorsionPoint point_;
  IntMatrix lattice_;
};

/// Whether c1 is contained in c2.
inline bool subcosetTest(const TorsionCoset& c1, const TorsionCoset& c2) {
  if (c1.ambient() != c2.ambient() || c1.dimension() > c2.dimension()) return false;
  IntegerLattice a1(c1.lattice(), c1.ambient());
  for (const auto& row : c2.lattice()) {
    if (!a1.contains(row)) return false;
    if (pointPower(c1.representative(), row) != pointPower(c2.representative(), row)) return false;
  }
  return true;
}

/// Sort by (dimension, key), remove duplicates and cosets contained in others.
inline std::vector<TorsionCoset> maximalFilter(std::vector<TorsionCoset> cosets) {
  std::vector<std::pair<std::pair<std::size_t, CosetKey>, TorsionCoset>> keyed;
  keyed.reserve(cosets.size());
  for (auto& c : cosets) keyed.push_back({{c.dimension(), c.key()}, std::move(c)});
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }), keyed.end());
  std::vector<TorsionCoset> out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    bool contained = false;
    for (std::size_t j = 0; j < keyed.size() && !contained; ++j)
      if (j != i && keyed[j].first.first > keyed[i].first.first && subcosetTest(keyed[i].second, keyed[j].second))
        contained = true;
    if (!contained) out.push_back(std::move(keyed[i].second));
  }
  return out;
}

/// Image of a coset of V(f) under the change of variables X = Y^U, i.e. a coset of V(f^U).
inline TorsionCoset transformCoset(const TorsionCoset& c, const IntMatrix& u) {
  const std::size_t n = c.ambient();
  IntMatrix v = inverseUnimodular(u);
  TorsionPoint q(n);
  for (std::size_t k = 0; k < n; ++k) q[k] = pointPower(c.representative(), u[k]);
  IntMatrix b;
  for (const auto& row : c.lattice()) b.push_back(rowTimes<Int>(row, v, n));
  return TorsionCoset(std::move(q), b);
}

/// Embed a coset of the last n-1 coordinates into n-space with first coordinate fixed to omega.
inline TorsionCoset prependFixedCoordinate(const RootOfUnity& omega, const TorsionCoset& c) {
  const std::size_t n = c.ambient() + 1;
  TorsionPoint q{omega};
  q.insert(q.end(), c.representative().begin(), c.representative().end());
  IntMatrix lat;
  IntVector e1(n, 0);
  e1[0] = 1;
  lat.push_back(e1);
  for (const auto& row : c.lattice()) {
    IntVector r{0};
    r.insert(r.end(), row.begin(), row.end());
    lat.push_back(std::move(r));
  }
  return TorsionCoset(std::move(q), lat);
}

/// Embed a coset of the first r coordinates into n-space, free in the remaining ones.
inline TorsionCoset padFreeCoordinates(const TorsionCoset& c, std::size_t n) {
  TorsionPoint q = c.representative();
  q.resize(n);
  IntMatrix lat;
  for (const auto& row : c.lattice()) {
    IntVector r = row;
    r.resize(n, 0);
    lat.push_back(std::move(r));
  }
  return TorsionCoset(std::move(q), lat);
}

/// Solutions q in (Q/Z)^n of <q, r_i> = s_i for every row r_i of R.
struct CongruenceSolutions {
  bool consistent = false;
  IntMatrix homogeneous;              ///< saturation of the row lattice of R
  BigInt classCount = 0;              ///< number of cosets of H_homogeneous in the solution set
  std::vector<TorsionPoint> classes;  ///< one representative per class
};

inline CongruenceSolutions solveExponentCongruences(const IntMatrix& r, const std::vector<RootOfUnity>& s, std::size_t n,
                                                    std::size_t budget = 1000000) {
  if (r.size() != s.size()) throw InvalidArgument("solveExponentCongruences: size mismatch");
  CongruenceSolutions out;
  out.homogeneous = r.empty() ? IntMatrix{} : saturation(r, n);
  if (r.empty()) {
    out.consistent = true;
    out.classCount = 1;
    out.classes.push_back(TorsionPoint(n));
    return out;
  }
  auto snf = smithDecompose(r, n);
  const std::size_t k = r.size();
  // t = W s.
  std::vector<RootOfUnity> t(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (snf.left[i][j] != 0) t[i] = t[i] + snf.left[i][j] * s[j];
  for (std::size_t i = snf.rank; i < k; ++i)
    if (!t[i].isOne()) return out;
  out.consistent = true;
  out.classCount = 1;
  for (std::size_t i = 0; i < snf.rank; ++i) out.classCount *= snf.diagonal[i][i];
  if (out.classCount > budget) throw BudgetExceeded("congruence class enumeration", static_cast<std::size_t>(out.classCount.get_d()));
  // y_i = (t_i + j_i) / d_i, q = V y.
  std::vector<Int> digits(snf.rank, 0);
  for (;;) {
    std::vector<RootOfUnity> y(n);
    for (std::size_t i = 0; i < snf.rank; ++i) {
      Int d = snf.diagonal[i][i];
      y[i] = RootOfUnity(checked::add(t[i].num(), checked::mul(digits[i], t[i].den())), checked::mul(d, t[i].den()));
    }
    TorsionPoint q(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < snf.rank; ++b)
        if (snf.right[a][b] != 0) q[a] = q[a] + snf.right[a][b] * y[b];
    out.classes.push_back(std::move(q));
    std::size_t pos = 0;
    while (pos < snf.rank && ++digits[pos] == snf.diagonal[pos][pos]) digits[pos++] = 0;
    if (pos == snf.rank) break;
  }
  return out;
}

/// Whether the coset lies on V(f) for every f in the system: each slice f_j must vanish at omega.
inline bool liesOnVariety(const TorsionCoset& c, const LaurentSystem& system) {
  IntMatrix g = c.complement();
  for (const auto& f : system) {
    if (f.nvars() != c.ambient()) throw InvalidArgument("liesOnVariety: dimension mismatch");
    for (const auto& [key, slice] : cosetSlices(f, g))
      if (!vanishesAt(slice, c.representative())) return false;
  }
  return true;
}

}  // namespace torsion
