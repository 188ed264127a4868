#include "k3sc/arith.hpp"

#include <gtest/gtest.h>

#include "k3sc/rng.hpp"

using namespace k3sc;

TEST(Arith, Gcd) {
  EXPECT_EQ(gcd(0, 7), 7);
  EXPECT_EQ(gcd(4, 6), 2);
  EXPECT_EQ(gcd(4, 9), 1);
  EXPECT_EQ(gcd(0, 0), 0);
  EXPECT_EQ(gcd(-4, 6), 2);
}

TEST(Arith, PComponent) {
  EXPECT_EQ(p_component(12, 2), 4);
  EXPECT_EQ(p_component(12, 3), 3);
  EXPECT_EQ(p_component(7, 5), 1);
  EXPECT_THROW(p_component(12, 4), Error);
  EXPECT_THROW(p_component(12, 1), Error);
}

TEST(Arith, SquarefreeDecompose) {
  SquareFreeDecomposition d = squarefree_decompose(1);
  EXPECT_EQ(d.sign, 1);
  EXPECT_EQ(d.squarefree, 1);
  EXPECT_EQ(d.root, 1);

  d = squarefree_decompose(-18);
  EXPECT_EQ(d.sign, -1);
  EXPECT_EQ(d.squarefree, 2);
  EXPECT_EQ(d.root, 3);

  d = squarefree_decompose(8);
  EXPECT_EQ(d.sign, 1);
  EXPECT_EQ(d.squarefree, 2);
  EXPECT_EQ(d.root, 2);

  EXPECT_THROW(squarefree_decompose(0), Error);
}

TEST(Arith, CrtPair) {
  Residue r = crt_pair(-1, 2, 1, 2);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.modulus, 2);

  r = crt_pair(-1, 4, 1, 6);
  EXPECT_EQ(r.value, 7);
  EXPECT_EQ(r.modulus, 12);

  EXPECT_THROW(crt_pair(1, 3, 2, 3), Error);
}

TEST(Arith, ModInverse) {
  EXPECT_EQ(mod_inverse(1, 8), 1);
  EXPECT_EQ(mod_inverse(3, 8), 3);
  EXPECT_THROW(mod_inverse(2, 8), Error);
  EXPECT_EQ(mod_inverse(5, 1), 0);
}

TEST(Arith, Factorize) {
  EXPECT_TRUE(factorize(1).factors.empty());

  Factorization f = factorize(12);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, 2);
  EXPECT_EQ(f.factors[0].second, 2u);
  EXPECT_EQ(f.factors[1].first, 3);
  EXPECT_EQ(f.factors[1].second, 1u);

  f = factorize(150);  // 2 * a1*b1*c^2/gamma for a1=2, b1=3, c=5, gamma=2
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.factors[0], (std::pair<Int, unsigned>(2, 1)));
  EXPECT_EQ(f.factors[1], (std::pair<Int, unsigned>(3, 1)));
  EXPECT_EQ(f.factors[2], (std::pair<Int, unsigned>(5, 2)));
}

TEST(Arith, FactorizeReconstructsEveryValue) {
  for (long n = 1; n <= 100000; ++n) {
    Factorization f = factorize(n);
    Int prod = 1;
    for (const auto& [p, e] : f.factors)
      for (unsigned i = 0; i < e; ++i) prod *= p;
    ASSERT_EQ(prod, n) << "n=" << n;
  }
  // primes certified (spot-check the predicate itself)
  for (const auto& [p, e] : factorize(987654).factors) EXPECT_TRUE(is_prime(p));
}

TEST(Arith, SquarefreeDecomposeReconstructs) {
  for (long n = -10000; n <= 10000; ++n) {
    if (n == 0) continue;
    SquareFreeDecomposition d = squarefree_decompose(n);
    ASSERT_EQ(Int(d.sign) * d.squarefree * d.root * d.root, n) << "n=" << n;
    for (const auto& [p, e] : factorize(d.squarefree).factors)
      ASSERT_EQ(e, 1u) << "n=" << n;
  }
}

TEST(Arith, CrtPairRandomCompatiblePairs) {
  Rng rng(2024);
  for (int i = 0; i < 10000; ++i) {
    Int m1 = rng.range(1, 300);
    Int m2 = rng.range(1, 300);
    Int x = rng.range(-100000, 100000);  // common solution
    Residue r = crt_pair(mod_floor(x, m1), m1, mod_floor(x, m2), m2);
    ASSERT_EQ(r.modulus, lcm(m1, m2));
    ASSERT_TRUE(congruent(r.value, x, m1));
    ASSERT_TRUE(congruent(r.value, x, m2));
    ASSERT_GE(r.value, 0);
    ASSERT_LT(r.value, r.modulus);
  }
}

TEST(Arith, ModInverseAllCoprimePairs) {
  for (long m = 2; m <= 500; ++m)
    for (long a = 1; a < m; ++a) {
      if (gcd(a, m) != 1) continue;
      Int inv = mod_inverse(a, m);
      ASSERT_TRUE(congruent(inv * a, 1, m)) << a << " mod " << m;
    }
}
