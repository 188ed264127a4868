#include "k3sc/decision.hpp"

#include <gtest/gtest.h>

#include "k3sc/rng.hpp"

using namespace k3sc;

TEST(Decision, Rho1Criterion) {
  for (long n = 1; n <= 10; ++n) EXPECT_TRUE(decide_rho1(1, n, 1));
  EXPECT_FALSE(decide_rho1(2, 2, 1));
  EXPECT_TRUE(decide_rho1(4, 9, 6));  // c = 1, a1 = 1
  EXPECT_FALSE(decide_rho1(2, 3, 1));
  EXPECT_TRUE(decide_rho1(4, 1, 2));  // a1 = 1 via d
}

TEST(Decision, Rho2Examples) {
  Rho2Verdict v = decide_rho2(2, 2, 1, 1, 17, 1);
  ASSERT_TRUE(v.yes);
  EXPECT_EQ(v.witness->series, Series::A);
  EXPECT_EQ(v.witness->eps, 1);
  EXPECT_EQ(v.witness->pq.p, 5);
  EXPECT_EQ(v.witness->pq.q, 1);
  EXPECT_EQ(v.h1->x, 10);
  EXPECT_EQ(v.h1->y, 2);
  EXPECT_TRUE(v.element_report.passed);

  // Mukai case: the primitive polarization itself is the witness
  v = decide_rho2(1, 2, 1, 1, 9, 1);
  ASSERT_TRUE(v.yes);
  EXPECT_EQ(v.h1->x, 4);
  EXPECT_EQ(v.h1->y, 0);
  EXPECT_EQ(v.h_prime->x, 4);
  EXPECT_EQ(v.h_prime->y, 0);

  // delta = 1 (square discriminant): (3,1) fails the membership congruence
  // but (3,-1) passes, so the complete search still answers YES
  Context ctx = make_context(2, 2, 1, 1, 1, 1);
  EXPECT_FALSE(check_AG(ctx, 1, 3, 1).passed);
  EXPECT_TRUE(check_AG(ctx, 1, 3, -1).passed);
  v = decide_rho2(ctx);
  EXPECT_TRUE(v.yes);

  // an instance with a genuine NO: p^2 - 25q^2 = +-8 has no solutions
  v = decide_rho2(2, 2, 1, 1, 25, 3);
  EXPECT_FALSE(v.yes);

  EXPECT_THROW(decide_rho2(1, 2, 1, 1, 5, 1), Error);  // 5 != 1 mod 8
}

TEST(Decision, OracleExamples) {
  // witness with y = 0 is found even at bound 0
  OracleVerdict ov = oracle_decide_bounded(make_context(1, 2, 1, 1, 9, 1), 0);
  EXPECT_TRUE(ov.found);
  EXPECT_EQ(ov.xy->y, 0);

  ov = oracle_decide_bounded(make_context(2, 2, 1, 1, 17, 1), 100);
  EXPECT_TRUE(ov.found);

  ov = oracle_decide_bounded(make_context(2, 2, 1, 1, 25, 3), 200);
  EXPECT_FALSE(ov.found);
}

TEST(Decision, WitnessElementMatchesSeriesScaling) {
  Context ctx = make_context(2, 2, 1, 1, 17, 1);
  LatticeElement h1 = witness_element(ctx, Series::A, Solution{5, 1});
  EXPECT_EQ(h1.x, 10);
  EXPECT_EQ(h1.y, 2);
  EXPECT_TRUE(is_member(ctx.lattice_x(), h1));
  EXPECT_EQ(norm(ctx.lattice_x(), h1), 4);  // eps*2*b1*c
}

TEST(Decision, AgreementOnRandomContexts) {
  Rng rng(21);
  int done = 0;
  while (done < 60) {
    long a1 = rng.range(1, 4), b1 = rng.range(1, 4), c = rng.range(1, 3);
    if (gcd(a1, b1) != 1) continue;
    long gamma = rng.below(2) == 0 ? 1 : 2;
    if (!divides(gamma, Int(2 * a1 * b1)) || gcd(gamma, c) != 1) continue;
    Int nx = exact_div(Int(2 * a1 * b1 * c * c), Int(gamma));
    Int mu = rng.range(0, 100000);
    if (gcd(mu, nx) != 1) continue;
    mu = mod_floor(mu, nx);
    Int d0 = mod_floor(gamma * mu * mu, 2 * nx);
    if (d0 == 0) d0 = 2 * nx;
    Int delta = d0 + 2 * nx * rng.range(0, 10);
    if (delta > 400) continue;
    Context ctx = make_context(a1 * c, b1 * c, 1, gamma, delta, mu);
    Rho2Verdict v = decide_rho2(ctx);
    if (v.yes) {
      // a YES is certified by its witness alone; the oracle scans the
      // square-2a1b1 elements, so compare when the nef image is in bound
      ASSERT_TRUE(v.element_report.passed);
      if (abs(v.h_prime->y) <= 2000) {
        ASSERT_TRUE(oracle_decide_bounded(ctx, 2000).found);
      }
    } else {
      ASSERT_FALSE(oracle_decide_bounded(ctx, 2000).found);
    }
    ++done;
  }
}

TEST(Decision, MukaiSufficiencySmallSweep) {
  for (long r = 1; r <= 12; ++r)
    for (long s = 1; s <= 12; ++s) {
      if (gcd(r, s) != 1) continue;  // c = 1
      MukaiInvariants inv = derive_invariants(MukaiInput{r, s, 1});
      if (inv.a1 != 1 && inv.b1 != 1) continue;
      for (long gamma = 1; gamma <= 2 * r * s; ++gamma) {
        if (!divides(gamma, 2 * inv.a1 * inv.b1)) continue;
        GammaSplit split = split_gamma(inv, gamma);
        for (Int mu = 0; mu < split.n_x; ++mu) {
          if (gcd(mu, split.n_x) != 1) continue;
          Int d0 = mod_floor(gamma * mu * mu, 2 * split.n_x);
          if (d0 == 0) d0 = 2 * split.n_x;
          for (Int delta = d0; delta <= 60; delta += 2 * split.n_x) {
            Context ctx = make_context(r, s, 1, gamma, delta, mu);
            ASSERT_TRUE(decide_rho2(ctx).yes)
                << "r=" << r << " s=" << s << " gamma=" << gamma
                << " delta=" << delta << " mu=" << mu;
          }
        }
      }
    }
}
