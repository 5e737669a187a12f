#include <gtest/gtest.h>

#include "torsion/parser.hpp"
#include "torsion/solver.hpp"

using namespace torsion;

namespace {

LaurentPolynomial poly(const std::string& s, std::vector<std::string> vars = {"x", "y"}, Int level = 1) {
  return parsePolynomial(s, vars, level);
}

std::size_t countDim(const std::vector<TorsionCoset>& cs, std::size_t d) {
  std::size_t k = 0;
  for (const auto& c : cs) k += c.dimension() == d;
  return k;
}

TorsionPoint pt(std::initializer_list<std::pair<Int, Int>> xs) {
  TorsionPoint q;
  for (auto [a, m] : xs) q.emplace_back(a, m);
  return q;
}

}  // namespace

TEST(Normalize, DropsCommonRootsOfUnity) {
  std::vector<std::string> v{"x", "y"};
  auto a = minimalLevelNormalize(poly("zeta*x + zeta*y - zeta", v, 8));
  EXPECT_EQ(a.level, 1);
  auto b = minimalLevelNormalize(poly("x + zeta*y", v, 8));
  EXPECT_EQ(b.level, 1);
  auto c = minimalLevelNormalize(poly("x + y - zeta", v, 4));
  EXPECT_EQ(c.level, 1);
  // Twisting cannot make 1, x, y and zeta*x*y rational together.
  auto d = minimalLevelNormalize(poly("1 + x + y + zeta*x*y", v, 5));
  EXPECT_EQ(d.level, 5);
}

TEST(Companions, CountAndShape) {
  auto f = poly("x + y - 1");
  auto fam = auxiliaryPolynomials(f);
  EXPECT_EQ(fam.size(), 7u);
  for (const auto& g : fam) EXPECT_LE(g.totalDegree(), 2 * f.totalDegree());
  // x + y - zeta_4 with a twist normalizes to level 1, and after undoing it the sign variant x + y + zeta_4 appears.
  auto h = poly("x + y - zeta", {"x", "y"}, 4);
  auto famH = auxiliaryPolynomials(h);
  EXPECT_EQ(famH.size(), 7u);
  auto target = normalizeAssociate(poly("x + y + zeta", {"x", "y"}, 4));
  bool found = false;
  for (const auto& g : famH) found = found || normalizeAssociate(g) == target;
  EXPECT_TRUE(found);
}

TEST(Congruences, ClassesAndInconsistency) {
  auto s = solveExponentCongruences(IntMatrix{{2, 0}, {0, 2}}, {RootOfUnity(1, 3), RootOfUnity(2, 3)}, 2);
  EXPECT_TRUE(s.consistent);
  EXPECT_EQ(s.classCount, 4);
  ASSERT_EQ(s.classes.size(), 4u);
  for (const auto& q : s.classes) {
    EXPECT_EQ(2 * q[0], RootOfUnity(1, 3));
    EXPECT_EQ(2 * q[1], RootOfUnity(2, 3));
  }
  auto e = solveExponentCongruences(IntMatrix{{2, 0}, {1, 0}}, {RootOfUnity(1, 2), RootOfUnity(1, 3)}, 2);
  EXPECT_FALSE(e.consistent);
  EXPECT_TRUE(e.classes.empty());
  EXPECT_THROW(solveExponentCongruences(IntMatrix{{1000, 0}, {0, 1000}}, {RootOfUnity(), RootOfUnity()}, 2, 1000), BudgetExceeded);
}

TEST(Coset, TransformAndCanonicalPoint) {
  TorsionCoset c(pt({{1, 3}, {0, 1}}), IntMatrix{{1, 1}});
  EXPECT_EQ(c.dimension(), 1u);
  EXPECT_EQ(c.canonicalPoint(), pt({{1, 3}, {0, 1}}));
  TorsionCoset d(pt({{0, 1}, {1, 3}}), IntMatrix{{1, 1}});
  EXPECT_EQ(c, d);
  IntMatrix u{{1, 1}, {0, 1}};
  auto t = transformCoset(c, u);
  auto back = transformCoset(t, inverseUnimodular(u));
  EXPECT_EQ(back, c);
  EXPECT_THROW(TorsionCoset(pt({{0, 1}, {0, 1}}), IntMatrix{{2, 0}}), InvalidArgument);
  EXPECT_TRUE(subcosetTest(TorsionCoset::point(pt({{1, 3}, {0, 1}})), c));
  EXPECT_FALSE(subcosetTest(TorsionCoset::point(pt({{1, 2}, {0, 1}})), c));
}

TEST(Solver, LineHasTwoPoints) {
  auto cs = solveHyper(poly("x + y - 1"));
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].dimension(), 0u);
  std::set<TorsionPoint> pts;
  for (const auto& c : cs) pts.insert(c.canonicalPoint());
  EXPECT_EQ(pts, (std::set<TorsionPoint>{pt({{1, 6}, {5, 6}}), pt({{5, 6}, {1, 6}})}));
}

TEST(Solver, CircleLikeCurve) {
  auto cs = solveHyper(poly("x^2 + y^2 + 1"));
  EXPECT_EQ(cs.size(), 8u);
  EXPECT_EQ(countDim(cs, 0), 8u);
  for (const auto& c : cs) EXPECT_TRUE(evaluate(poly("x^2 + y^2 + 1"), c.representative()).isZero());
}

TEST(Solver, BinomialGivesSubtori) {
  auto cs = solveHyper(poly("x^2*y^2 - 1"));
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(countDim(cs, 1), 2u);
}

TEST(Solver, ReducibleMixesDimensions) {
  auto cs = solveHyper(poly("(x - 1)*(x + y - 1)"));
  EXPECT_EQ(cs.size(), 3u);
  EXPECT_EQ(countDim(cs, 1), 1u);
  EXPECT_EQ(countDim(cs, 0), 2u);
}

TEST(Solver, PlaneInThreeSpace) {
  auto cs = solveHyper(poly("x + y + z - 1", {"x", "y", "z"}));
  EXPECT_EQ(cs.size(), 3u);
  EXPECT_EQ(countDim(cs, 1), 3u);
}

TEST(Solver, NonFullLatticeIsPulledBack) {
  // x^2 + y^2 - 1 = g(x^2, y^2) with g = u + v - 1.
  auto f = poly("x^2 + y^2 - 1");
  auto cs = solveHyper(f);
  EXPECT_EQ(cs.size(), 8u);
  for (const auto& c : cs) EXPECT_TRUE(evaluate(f, c.representative()).isZero());
}

TEST(Solver, CyclotomicCoefficients) {
  auto f = poly("x + y - zeta", {"x", "y"}, 4);
  auto cs = solveHyper(f);
  EXPECT_EQ(cs.size(), 2u);
  for (const auto& c : cs) EXPECT_TRUE(evaluate(f, c.representative()).isZero());
}

TEST(Variety, Systems) {
  auto a = varietyCosets({poly("x*y - 1"), poly("x + y - 1")});
  ASSERT_EQ(a.size(), 2u);
  std::set<TorsionPoint> pts;
  for (const auto& c : a) pts.insert(c.canonicalPoint());
  EXPECT_EQ(pts, (std::set<TorsionPoint>{pt({{1, 6}, {5, 6}}), pt({{5, 6}, {1, 6}})}));
  EXPECT_TRUE(varietyCosets({poly("x + y - 1"), poly("x - y")}).empty());
  auto whole = varietyCosets({poly("0"), poly("0")});
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole[0].dimension(), 2u);
}

TEST(Variety, SubtorusCutByAnotherEquation) {
  std::vector<std::string> v{"x", "y", "z"};
  // x = y is a 2-dim subtorus; x + z - 1 cuts it in two points.
  auto cs = varietyCosets({poly("x - y", v), poly("x + z - 1", v)});
  EXPECT_EQ(cs.size(), 2u);
  for (const auto& c : cs) {
    EXPECT_EQ(c.dimension(), 0u);
    EXPECT_TRUE(liesOnVariety(c, {poly("x - y", v), poly("x + z - 1", v)}));
  }
  auto lines = varietyCosets({poly("x - 1", v), poly("y*z - 1", v)});
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].dimension(), 1u);
  EXPECT_EQ(lines[0].lattice(), (IntMatrix{{1, 0, 0}, {0, 1, 1}}));
}

TEST(Solver, ThreadsAgree) {
  auto f = poly("x^2 + x*y + y^2 + x + 1");
  SolveOptions o;
  o.threads = 4;
  auto a = solveHyper(f), b = solveHyper(f, o);
  EXPECT_EQ(a, b);
}
