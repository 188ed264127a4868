#include "k3sc/pell.hpp"

#include <gtest/gtest.h>

#include <set>

#include "k3sc/crossval.hpp"
#include "k3sc/rng.hpp"

using namespace k3sc;

namespace {

Int form_value(const FormEquation& eq, const Solution& s) {
  return eq.gamma * s.p * s.p - eq.delta * s.q * s.q;
}

}  // namespace

TEST(Pell, FundamentalAutomorph) {
  auto a = fundamental_automorph(1, 5);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->t, 9);
  EXPECT_EQ(a->u, 4);

  a = fundamental_automorph(1, 2);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->t, 3);
  EXPECT_EQ(a->u, 2);

  EXPECT_FALSE(fundamental_automorph(1, 4).has_value());
  EXPECT_FALSE(fundamental_automorph(2, 2).has_value());

  // large fundamental solutions come out exactly
  a = fundamental_automorph(1, 61);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->t, Int("1766319049"));
  EXPECT_EQ(a->u, Int("226153980"));
  ASSERT_EQ(a->t * a->t - 61 * a->u * a->u, 1);
}

TEST(Pell, SolveOrbitsExamples) {
  std::vector<PellOrbit> orbits = solve_orbits(FormEquation{1, 5, 4});
  std::set<std::pair<Int, Int>> reps;
  for (const PellOrbit& o : orbits) reps.insert({o.rep.p, o.rep.q});
  EXPECT_EQ(reps.size(), 3u);
  EXPECT_TRUE(reps.count({2, 0}));
  EXPECT_TRUE(reps.count({3, 1}));
  EXPECT_TRUE(reps.count({3, -1}));

  EXPECT_TRUE(solve_orbits(FormEquation{1, 5, 3}).empty());

  orbits = solve_orbits(FormEquation{1, 4, -3});
  reps.clear();
  for (const PellOrbit& o : orbits) reps.insert({o.rep.p, o.rep.q});
  EXPECT_EQ(reps.size(), 2u);
  EXPECT_TRUE(reps.count({1, 1}));
  EXPECT_TRUE(reps.count({1, -1}));

  EXPECT_THROW(solve_orbits(FormEquation{1, 5, 0}), Error);
}

TEST(Pell, EnumerateBounded) {
  std::vector<Solution> sols = enumerate_bounded(FormEquation{1, 5, 4}, 3);
  std::vector<Solution> expect = {{-7, -3}, {-7, 3}, {-3, -1}, {-3, 1}, {-2, 0},
                                  {2, 0},   {3, -1}, {3, 1},   {7, -3}, {7, 3}};
  ASSERT_EQ(sols.size(), expect.size());
  for (size_t i = 0; i < sols.size(); ++i) {
    EXPECT_EQ(sols[i].p, expect[i].p) << i;
    EXPECT_EQ(sols[i].q, expect[i].q) << i;
  }

  sols = enumerate_bounded(FormEquation{1, 5, 4}, 0);
  ASSERT_EQ(sols.size(), 2u);
  EXPECT_EQ(sols[0].p, -2);
  EXPECT_EQ(sols[1].p, 2);

  sols = enumerate_bounded(FormEquation{1, 5, -4}, 1);
  ASSERT_EQ(sols.size(), 4u);  // (+-1, +-1)
  for (const Solution& s : sols) EXPECT_EQ(abs(s.p) + abs(s.q), 2);
}

TEST(Pell, ExistsSolutionWithCongruences) {
  FormEquation eq{1, 17, 8};
  CongruenceQuery query{4, [](const Int& p, const Int& q) {
                          return mod_floor(p - q, 4) == 0;
                        }};
  auto w = exists_solution_with_congruences(eq, query);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(form_value(eq, *w), 8);
  EXPECT_TRUE(congruent(w->p - w->q, 0, 4));
  EXPECT_EQ(w->p, 5);
  EXPECT_EQ(w->q, 1);

  FormEquation eq2{1, 5, 4};
  auto w2 = exists_solution_with_congruences(
      eq2, CongruenceQuery{2, [](const Int&, const Int& q) { return q == 0; }});
  ASSERT_TRUE(w2.has_value());
  EXPECT_EQ(w2->p, 2);
  EXPECT_EQ(w2->q, 0);

  auto none = exists_solution_with_congruences(
      eq2, CongruenceQuery{2, [](const Int&, const Int&) { return false; }});
  EXPECT_FALSE(none.has_value());

  EXPECT_THROW(exists_solution_with_congruences(
                   eq2, CongruenceQuery{0, [](const Int&, const Int&) {
                                          return true;
                                        }}),
               Error);

  // a q = 0 hit can be pushed one period out
  auto nz = exists_solution_with_congruences(
      eq2, CongruenceQuery{2, [](const Int&, const Int& q) { return q == 0; }},
      /*require_nonzero_q=*/true);
  ASSERT_TRUE(nz.has_value());
  EXPECT_NE(nz->q, 0);
  EXPECT_EQ(form_value(eq2, *nz), 4);
  EXPECT_TRUE(congruent(nz->q, 0, 2));
}

TEST(Pell, AutomorphActionPreservesForm) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    Int gamma = rng.range(1, 12);
    Int delta = rng.range(1, 60);
    if (is_perfect_square(gamma * delta)) continue;
    auto aut = fundamental_automorph(gamma, delta);
    ASSERT_TRUE(aut.has_value());
    ASSERT_EQ(aut->t * aut->t - gamma * delta * aut->u * aut->u, 1);
    Int p = rng.range(-1000000, 1000000), q = rng.range(-1000000, 1000000);
    Int before = gamma * p * p - delta * q * q;
    Int pn = aut->t * p + delta * aut->u * q;
    Int qn = gamma * aut->u * p + aut->t * q;
    ASSERT_EQ(gamma * pn * pn - delta * qn * qn, before);
  }
}

TEST(Pell, CompletenessSmallSweep) {
  SweepResult result = sweep_pell(5, /*full=*/false);
  EXPECT_TRUE(result.ok) << result.counterexample;
  EXPECT_GE(result.checked, 50);
}

TEST(Pell, ResidueActionIsPeriodic) {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    Int gamma = rng.range(1, 8);
    Int delta = rng.range(1, 40);
    if (is_perfect_square(gamma * delta)) continue;
    Automorph aut = *fundamental_automorph(gamma, delta);
    Int M = rng.range(2, 1000);
    // iterate the action on a basis vector until it returns
    Int p = 1, q = 0;
    long steps = 0;
    do {
      Int pn = mod_floor(aut.t * p + delta * aut.u * q, M);
      Int qn = mod_floor(gamma * aut.u * p + aut.t * q, M);
      p = pn;
      q = qn;
      ++steps;
      ASSERT_LT(steps, 4000000L);
    } while (!(p == 1 && q == 0));
    SUCCEED();
  }
}

// When the solver reports a witness it must verify; when it reports none,
// a bounded brute-force scan must find nothing either.
TEST(Pell, ExistsAgreesWithBoundedBruteForce) {
  Rng rng(17);
  int done = 0;
  while (done < 60) {
    Int gamma = rng.range(1, 6);
    Int delta = rng.range(1, 60);
    Int N = rng.range(1, 60);
    if (rng.below(2) == 0) N = -N;
    if (N == 0) continue;
    Int M = rng.range(2, 24);
    Int pr = rng.range(0, to_i64(M) - 1), qr = rng.range(0, to_i64(M) - 1);
    FormEquation eq{gamma, delta, N};
    CongruenceQuery query{M, [&](const Int& p, const Int& q) {
                            return p == pr && q == qr;
                          }};
    auto w = exists_solution_with_congruences(eq, query);
    bool brute_hit = false;
    for (const Solution& s : enumerate_bounded(eq, 10000))
      if (mod_floor(s.p, M) == pr && mod_floor(s.q, M) == qr) {
        brute_hit = true;
        break;
      }
    if (w.has_value()) {
      ASSERT_EQ(form_value(eq, *w), N);
      ASSERT_EQ(mod_floor(w->p, M), pr);
      ASSERT_EQ(mod_floor(w->q, M), qr);
    } else {
      ASSERT_FALSE(brute_hit) << "gamma=" << gamma << " delta=" << delta
                              << " N=" << N << " M=" << M;
    }
    ++done;
  }
}
