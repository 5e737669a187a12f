#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "torsion/roots.hpp"

using namespace torsion;

namespace {

std::complex<double> expi(double num, double den) {
  double a = 2.0 * std::numbers::pi * num / den;
  return {std::cos(a), std::sin(a)};
}

// Random element of Q(zeta_m) built from a few random roots of unity.
Cyclo randomCyclo(std::mt19937_64& rng, Int m) {
  std::uniform_int_distribution<Int> coeff(-5, 5), exp(0, m - 1);
  Cyclo c;
  for (int i = 0; i < 3; ++i) c += Cyclo(static_cast<long>(coeff(rng))) * Cyclo::rootOfUnity(exp(rng), m);
  return c;
}

bool near(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

}  // namespace

TEST(Numbers, EulerPhiAndDivisors) {
  EXPECT_EQ(eulerPhi(1), 1);
  EXPECT_EQ(eulerPhi(12), 4);
  EXPECT_EQ(eulerPhi(97), 96);
  EXPECT_EQ(divisors(12), (std::vector<Int>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(canonicalLevel(6), 3);
  EXPECT_EQ(canonicalLevel(12), 12);
  EXPECT_EQ(floorMod(Int(-7), Int(3)), 2);
  EXPECT_EQ(floorDiv(Int(-7), Int(3)), -3);
}

TEST(Numbers, CheckedArithmeticDetectsOverflow) {
  EXPECT_THROW(checked::mul(Int(1) << 40, Int(1) << 40), Overflow);
  EXPECT_THROW(checked::add(std::numeric_limits<Int>::max(), Int(1)), Overflow);
}

TEST(Cyclo, CyclotomicPolynomials) {
  EXPECT_EQ(detail::cyclotomicPolynomial(1), (std::vector<Int>{-1, 1}));
  EXPECT_EQ(detail::cyclotomicPolynomial(4), (std::vector<Int>{1, 0, 1}));
  EXPECT_EQ(detail::cyclotomicPolynomial(12), (std::vector<Int>{1, 0, -1, 0, 1}));
  // Phi_105 is the first with a coefficient of absolute value 2.
  auto p = detail::cyclotomicPolynomial(105);
  EXPECT_EQ(p.size(), 49u);
  EXPECT_EQ(p[7], -2);
}

TEST(Cyclo, SixthRootLivesAtLevelThree) {
  Cyclo z6 = Cyclo::zeta(6);
  EXPECT_EQ(z6.level(), 3);
  EXPECT_EQ(z6, Cyclo(1) + Cyclo::zeta(3));
  EXPECT_TRUE(near(z6.toComplex(), expi(1, 6)));
  EXPECT_EQ(Cyclo::rootOfUnity(1, 2), Cyclo(-1));
}

TEST(Cyclo, BasicIdentities) {
  Cyclo i = Cyclo::zeta(4);
  EXPECT_EQ(i * i, Cyclo(-1));
  Cyclo z8 = Cyclo::zeta(8);
  EXPECT_EQ(z8 * z8, i);
  Cyclo sqrt2 = z8 + z8.galois(7);
  EXPECT_EQ(sqrt2 * sqrt2, Cyclo(2));
  EXPECT_EQ(sqrt2.normalized().level(), 8);
  // 1 + zeta_3 + zeta_3^2 = 0.
  EXPECT_TRUE((Cyclo(1) + Cyclo::zeta(3) + Cyclo::rootOfUnity(2, 3)).isZero());
  // zeta_12^3 = zeta_4 descends.
  EXPECT_EQ(Cyclo::rootOfUnity(3, 12).liftTo(12).normalized().level(), 4);
}

TEST(Cyclo, DivisionByZeroIsDistinct) {
  EXPECT_THROW(Cyclo(0).inverse(), DivisionByZero);
  EXPECT_THROW(Cyclo::zeta(5) / (Cyclo::zeta(5) - Cyclo::zeta(5)), DivisionByZero);
}

TEST(Cyclo, EmbedRejectsNonMultiple) {
  EXPECT_THROW(embedToLevel(Cyclo::zeta(5), 12), InvalidArgument);
  EXPECT_EQ(embedToLevel(Cyclo::zeta(5), 10).level(), 5);
  EXPECT_EQ(embedToLevel(Cyclo::zeta(4), 12).level(), 12);
  EXPECT_THROW(Cyclo(6, std::vector<Rational>(2)), InvalidArgument);
}

// Property: arithmetic agrees with complex evaluation, and field axioms hold exactly.
TEST(CycloProperty, FieldOperationsMatchComplexValues) {
  std::mt19937_64 rng(11);
  const Int levels[] = {1, 3, 4, 5, 7, 8, 9, 12, 15, 20};
  for (int iter = 0; iter < 200; ++iter) {
    Int m1 = levels[rng() % 10], m2 = levels[rng() % 10];
    Cyclo a = randomCyclo(rng, m1), b = randomCyclo(rng, m2), c = randomCyclo(rng, m2);
    EXPECT_TRUE(near((a + b).toComplex(), a.toComplex() + b.toComplex()));
    EXPECT_TRUE(near((a * b).toComplex(), a.toComplex() * b.toComplex()));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a - b) + b, a);
    if (!b.isZero()) {
      EXPECT_EQ((a / b) * b, a);
      EXPECT_TRUE(std::abs((a / b).toComplex() - a.toComplex() / b.toComplex()) < 1e-6 * (1 + std::abs(a.toComplex() / b.toComplex())));
    }
    Cyclo n = a.normalized();
    EXPECT_EQ(n, a);
    EXPECT_TRUE(near(n.toComplex(), a.toComplex()));
    EXPECT_EQ(a.level() % n.level(), 0);
  }
}

TEST(CycloProperty, GaloisIsARingHomomorphism) {
  std::mt19937_64 rng(12);
  for (int iter = 0; iter < 100; ++iter) {
    Int m = 12;
    Cyclo a = randomCyclo(rng, m).liftTo(m), b = randomCyclo(rng, m).liftTo(m);
    for (Int k : {5, 7, 11}) {
      EXPECT_EQ((a * b).galois(k), a.galois(k) * b.galois(k));
      EXPECT_EQ((a + b).galois(k), a.galois(k) + b.galois(k));
    }
  }
}

TEST(RootOfUnity, GroupLaw) {
  RootOfUnity a(1, 6), b(1, 3);
  EXPECT_EQ(a + b, RootOfUnity(1, 2));
  EXPECT_EQ(-a, RootOfUnity(5, 6));
  EXPECT_EQ(4 * a, RootOfUnity(2, 3));
  EXPECT_EQ(RootOfUnity(6, 4), RootOfUnity(1, 2));
  EXPECT_EQ(RootOfUnity(3, 3).order(), 1);
  EXPECT_EQ(RootOfUnity::fromRational(Rational(-1, 4)), RootOfUnity(3, 4));
  EXPECT_EQ(a.value(), Cyclo::zeta(6));
}

TEST(RootOfUnity, PointPower) {
  TorsionPoint q{RootOfUnity(1, 6), RootOfUnity(5, 6)};
  std::vector<Int> v{1, 1};
  EXPECT_TRUE(pointPower(q, v).isOne());
  std::vector<Int> w{2, -1};
  EXPECT_EQ(pointPower(q, w), RootOfUnity(1, 2));
  EXPECT_EQ(pointOrder(q), 6);
}

TEST(RootOfUnity, ConjugateExponent) {
  EXPECT_EQ(conjugateExponent(12), 7);
  EXPECT_EQ(conjugateExponent(6), 5);
  EXPECT_EQ(conjugateExponent(5), 2);
}

// omega^p is conjugate to omega (p is a unit) and equals -omega, -omega^2 or omega^2.
TEST(RootOfUnityProperty, ConjugateExponentRelation) {
  for (Int m = 1; m <= 200; ++m) {
    Int p = conjugateExponent(m);
    EXPECT_EQ(std::gcd(p, m), 1) << m;
    RootOfUnity w(1, m);
    RootOfUnity wp = p * w;
    RootOfUnity half(1, 2);
    if (m % 4 == 0) EXPECT_EQ(wp, w + half);
    else if (m % 2 == 0) EXPECT_EQ(wp, 2 * w + half);
    else EXPECT_EQ(wp, 2 * w);
  }
}
