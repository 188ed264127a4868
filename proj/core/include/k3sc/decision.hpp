#pragma once

#include <optional>

#include "k3sc/criteria.hpp"
#include "k3sc/pell.hpp"

namespace k3sc {

/// Rank-1 criterion: c = 1 and (a1 = 1 or b1 = 1).
bool decide_rho1(const Int& r, const Int& s, const Int& d);

struct BranchWitness {
  Series series;
  int eps;
  Solution pq;
};

struct Rho2Verdict {
  bool yes = false;
  std::optional<BranchWitness> witness;
  std::optional<LatticeElement> h1;       // witness element t*(p1, q1)
  std::optional<LatticeElement> h_prime;  // canonical nef image
  ConditionReport element_report;
};

/// Exact Pell search for one (series, eps) branch: solutions of the series
/// equation satisfying the general and singular clause families.
std::optional<Solution> decide_branch(const Context& ctx, Series series, int eps,
                                      bool require_nonzero_q = false);

/// Rank-2 criterion over the four branches in fixed order A+, A-, B+, B-.
Rho2Verdict decide_rho2(const Context& ctx);
Rho2Verdict decide_rho2(const Int& r, const Int& s, const Int& d, const Int& gamma,
                        const Int& delta, const Int& mu);

/// Witness element for a branch solution: (t*p1, t*q1), t = (B1/Gb)*c.
LatticeElement witness_element(const Context& ctx, Series series,
                               const Solution& pq);

struct OracleVerdict {
  bool found = false;
  std::optional<LatticeElement> xy;
  std::optional<Series> series;
  ConditionReport report;
  Int bound;
};

/// Independent brute-force criterion: scans all coordinate solutions with
/// |y| <= bound and tests the five element condition groups directly.
/// A YES is definitive; a NO only rules out witnesses within the bound.
OracleVerdict oracle_decide_bounded(const Context& ctx, const Int& bound);

}  // namespace k3sc
