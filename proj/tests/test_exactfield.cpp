#include "qcf/cyclotomic.hpp"
#include "qcf/qcombinatorics.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qcf;

namespace {

Scalar random_scalar(std::mt19937& rng, std::uint64_t m) {
  std::uniform_int_distribution<int> d(-5, 5);
  poly::Poly p(euler_totient(m));
  for (auto& c : p) c = Rational(d(rng), 1 + std::abs(d(rng)));
  return Scalar::from_polynomial(m, p);
}

// Independent evaluation of the Gaussian binomial through its generating
// function prod_{i<n} (1 + q^i t), read off at t^k.
Scalar binomial_by_product(unsigned n, unsigned k, const Scalar& q) {
  std::vector<Scalar> coeffs{Scalar(1)};
  Scalar qi(1);
  for (unsigned i = 0; i < n; ++i) {
    coeffs.push_back(Scalar(0));
    for (std::size_t j = coeffs.size() - 1; j > 0; --j) coeffs[j] += qi * coeffs[j - 1];
    qi *= q;
  }
  // prod (1 + q^i t) = sum_k q^{k(k-1)/2} C(n,k)_q t^k
  return coeffs[k] * q.pow(-static_cast<long long>(k * (k - 1) / 2));
}

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational r = parse_rational("-6/4");
  EXPECT_EQ(to_string(r), "-3/2");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
  EXPECT_EQ(to_string(Rational(5)), "5/1");
  EXPECT_THROW(parse_rational("1/0"), std::domain_error);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Cyclotomic, ZetaFourSquared) { EXPECT_EQ(Scalar::zeta(4) * Scalar::zeta(4), Scalar(-1)); }

TEST(Cyclotomic, ZetaThreeRelation) { EXPECT_EQ(Scalar::zeta(3) + Scalar::zeta(3, 2), Scalar(-1)); }

TEST(Cyclotomic, AdditiveIdentity) {
  Scalar a = Scalar::zeta(5) * Rational(3, 7) + Scalar(2);
  EXPECT_EQ(a + Scalar(0), a);
}

TEST(Cyclotomic, CyclotomicPolynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (poly::Poly{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (poly::Poly{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (poly::Poly{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (poly::Poly{1, 0, -1, 0, 1}));
  for (std::uint64_t m = 1; m <= 30; ++m) EXPECT_EQ(cyclotomic_polynomial(m).size() - 1, euler_totient(m));
}

TEST(Cyclotomic, MixedConductors) {
  // zeta_6 = -zeta_3^2, and zeta_12^4 = zeta_3
  EXPECT_EQ(Scalar::zeta(6), -Scalar::zeta(3, 2));
  EXPECT_EQ(Scalar::zeta(12).pow(4), Scalar::zeta(3));
  EXPECT_EQ(Scalar::zeta(4) * Scalar::zeta(3), Scalar::zeta(12, 7));
  EXPECT_TRUE((Scalar::zeta(2) - Scalar(-1)).is_zero());
}

TEST(Cyclotomic, DivisionByZero) {
  EXPECT_THROW(Scalar(1) / Scalar(0), DivisionByZero);
  EXPECT_THROW((Scalar::zeta(3) + Scalar::zeta(3, 2) + Scalar(1)).inverse(), DivisionByZero);
  EXPECT_FALSE(Scalar(1).try_divide(Scalar(0)).has_value());
}

TEST(Cyclotomic, FieldAxiomsOnRandomTriples) {
  std::mt19937 rng(7);
  for (std::uint64_t m : {1u, 3u, 4u, 5u, 8u, 12u}) {
    for (int trial = 0; trial < 15; ++trial) {
      Scalar a = random_scalar(rng, m), b = random_scalar(rng, m), c = random_scalar(rng, m);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      if (!a.is_zero()) { EXPECT_EQ(a * a.inverse(), Scalar(1)); }
      if (!b.is_zero()) { EXPECT_EQ((a / b) * b, a); }
    }
  }
}

TEST(Cyclotomic, StringRoundTrip) {
  Scalar a = Scalar::zeta(5, 2) * Rational(-3, 4) + Scalar(Rational(1, 3));
  EXPECT_EQ(Scalar::parse(a.to_string()), a);
  EXPECT_EQ(Scalar(Rational(-2, 3)).to_string(), "-2/3");
  EXPECT_EQ(Scalar::zeta(4).to_string(), "cyc(4)[0/1,1/1]");
  EXPECT_THROW(Scalar::parse("cyc(4)[1/1]"), std::invalid_argument);
}

TEST(RootOfUnity, Normalization) {
  RootOfUnity a(6, 2);
  EXPECT_EQ(a.order(), 3u);
  EXPECT_EQ(a.exponent(), 1);
  EXPECT_THROW(RootOfUnity::primitive(6, 2), std::invalid_argument);
  EXPECT_EQ(RootOfUnity::primitive(4, 3).pow(4), RootOfUnity(1, 0));
  EXPECT_EQ((RootOfUnity(3, 1) * RootOfUnity(2, 1)).to_scalar(), Scalar::zeta(6, 5));
  EXPECT_EQ(RootOfUnity(5, 2).to_scalar() * RootOfUnity(5, 2).inverse().to_scalar(), Scalar(1));
}

TEST(QCombinatorics, Integers) {
  EXPECT_EQ(q_integer(0, Scalar::zeta(3)), Scalar(0));
  EXPECT_EQ(q_integer(1, Scalar::zeta(3)), Scalar(1));
  EXPECT_EQ(q_integer(2, Scalar(-1)), Scalar(0));
  EXPECT_EQ(q_integer(3, Scalar(1)), Scalar(3));
  EXPECT_EQ(q_factorial(4, Scalar(1)), Scalar(24));
  EXPECT_EQ(q_factorial(3, Scalar(2)), Scalar(21));
}

TEST(QCombinatorics, SmallBinomials) {
  Scalar q = Scalar::zeta(7, 3);
  EXPECT_EQ(q_binomial(5, 0, q), Scalar(1));
  EXPECT_EQ(q_binomial(2, 1, q), Scalar(1) + q);
  EXPECT_THROW(q_binomial(2, 3, q), std::domain_error);
}

TEST(QCombinatorics, VanishAtPrimitiveRoots) {
  for (unsigned m = 2; m <= 6; ++m) {
    for (long long e = 1; e < m; ++e) {
      if (std::gcd<long long>(e, m) != 1) continue;
      Scalar q = Scalar::zeta(m, e);
      for (unsigned k = 1; k < m; ++k) EXPECT_TRUE(q_binomial(m, k, q).is_zero()) << m << " " << k;
      EXPECT_EQ(q_binomial(m, 0, q), Scalar(1));
      EXPECT_EQ(q_binomial(m, m, q), Scalar(1));
    }
  }
}

TEST(QCombinatorics, PascalRecurrenceAndProductFormula) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    Scalar q = random_scalar(rng, trial == 0 ? 1 : 5);
    if (q.is_zero()) q = Scalar(2);
    auto tri = q_binomial_triangle(12, q);
    for (unsigned n = 1; n <= 12; ++n)
      for (unsigned k = 1; k < n; ++k) EXPECT_EQ(tri[n][k], tri[n - 1][k - 1] + q.pow(k) * tri[n - 1][k]);
    for (unsigned n = 0; n <= 8; ++n)
      for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(tri[n][k], binomial_by_product(n, k, q));
  }
}

TEST(QCombinatorics, ClassicalLimit) {
  for (unsigned n = 0; n <= 12; ++n) {
    long long c = 1;
    for (unsigned k = 0; k <= n; ++k) {
      EXPECT_EQ(q_binomial(n, k, Scalar(1)), Scalar(c));
      c = c * (n - k) / (k + 1);
    }
  }
}
