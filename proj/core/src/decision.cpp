#include "k3sc/decision.hpp"

namespace k3sc {

bool decide_rho1(const Int& r, const Int& s, const Int& d) {
  MukaiInvariants inv = derive_invariants(MukaiInput{r, s, d});
  return inv.c == 1 && (inv.a1 == 1 || inv.b1 == 1);
}

std::optional<Solution> decide_branch(const Context& ctx, Series series, int eps,
                                      bool require_nonzero_q) {
  FormEquation eq{ctx.split.gamma, ctx.delta,
                  rhs(ctx, SeriesChoice{series, eps})};
  CongruenceQuery query;
  query.modulus = branch_modulus(ctx, series);
  query.predicate = [&ctx, series](const Int& p, const Int& q) {
    return branch_clauses_pass(ctx, series, p, q);
  };
  return exists_solution_with_congruences(eq, query, require_nonzero_q);
}

LatticeElement witness_element(const Context& ctx, Series series,
                               const Solution& pq) {
  Int other = series == Series::A ? ctx.inv.b1 : ctx.inv.a1;
  Int gb = series == Series::A ? ctx.split.gamma_b : ctx.split.gamma_a;
  Int t = exact_div(other, gb) * ctx.inv.c;
  return LatticeElement{t * pq.p, t * pq.q};
}

Rho2Verdict decide_rho2(const Context& ctx) {
  const SeriesChoice branches[4] = {{Series::A, 1},
                                    {Series::A, -1},
                                    {Series::B, 1},
                                    {Series::B, -1}};
  Rho2Verdict verdict;
  for (const SeriesChoice& choice : branches) {
    std::optional<Solution> pq = decide_branch(ctx, choice.series, choice.eps);
    if (!pq) continue;
    verdict.yes = true;
    verdict.witness = BranchWitness{choice.series, choice.eps, *pq};
    verdict.h1 = witness_element(ctx, choice.series, *pq);
    verdict.element_report = check_element(ctx, choice, *verdict.h1);
    verdict.h_prime = nef_image(ctx, choice, *verdict.h1);
    return verdict;
  }
  return verdict;
}

Rho2Verdict decide_rho2(const Int& r, const Int& s, const Int& d, const Int& gamma,
                        const Int& delta, const Int& mu) {
  return decide_rho2(make_context(r, s, d, gamma, delta, mu));
}

OracleVerdict oracle_decide_bounded(const Context& ctx, const Int& bound) {
  OracleVerdict verdict;
  verdict.bound = bound;
  Int a1b1 = ctx.inv.a1 * ctx.inv.b1;
  Int num0 = exact_div(4 * a1b1 * a1b1 * ctx.inv.c * ctx.inv.c, ctx.split.gamma);
  for (Int y = 0; y <= bound; ++y) {
    Int num = num0 + ctx.delta * y * y;
    if (!divides(ctx.split.gamma, num)) continue;
    Int xsq = exact_div(num, ctx.split.gamma);
    if (!is_perfect_square(xsq)) continue;
    Int x = isqrt(xsq);
    std::vector<LatticeElement> candidates;
    candidates.push_back(LatticeElement{x, y});
    if (y != 0) candidates.push_back(LatticeElement{x, -y});
    for (const LatticeElement& z : candidates)
      for (Series series : {Series::A, Series::B}) {
        ConditionReport rpt = check_thm313(ctx, series, z.x, z.y);
        if (rpt.passed) {
          verdict.found = true;
          verdict.xy = z;
          verdict.series = series;
          verdict.report = rpt;
          return verdict;
        }
      }
  }
  return verdict;
}

}  // namespace k3sc
