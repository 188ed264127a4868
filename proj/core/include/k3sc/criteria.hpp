#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3sc/arith.hpp"
#include "k3sc/lattice.hpp"
#include "k3sc/mukai.hpp"

namespace k3sc {

enum class Series { A, B };

inline const char* series_name(Series s) { return s == Series::A ? "A" : "B"; }

struct SeriesChoice {
  Series series;
  int eps;  // +1 or -1
};

/// All fixed data of one decision instance: the Mukai invariants, the
/// gamma splitting, and the lattice pair invariants (delta, mu).
struct Context {
  MukaiInvariants inv;
  GammaSplit split;
  Int delta;
  Int mu;  // canonical residue in [0, n_x)

  Factorization a1_factors, b1_factors, gamma_factors;

  Int n_x() const { return split.n_x; }
  Int n_y() const { return split.n_y; }
  PolarizedLattice2 lattice_x() const {
    return PolarizedLattice2{split.n_x, split.gamma, delta, mu};
  }
};

/// Validates gcd(c, d*gamma) = 1, gcd(mu, n_x) = 1 and
/// delta = gamma*mu^2 mod 4*a1*b1*c^2/gamma.
Context make_context(const Int& r, const Int& s, const Int& d, const Int& gamma,
                     const Int& delta, const Int& mu);

struct Clause {
  std::string id;
  std::string desc;
  bool passed;
};

struct ConditionReport {
  bool passed = true;
  std::vector<Clause> clauses;
  std::optional<int> beta;  // sign choice that satisfied the paired systems

  void add(const std::string& id, const std::string& desc, bool ok) {
    passed = passed && ok;
    clauses.push_back(Clause{id, desc, ok});
  }
  const Clause* find(const std::string& id) const {
    for (const auto& cl : clauses)
      if (cl.id == id) return &cl;
    return nullptr;
  }
};

/// Right-hand side of the series equation gamma*p1^2 - delta*q1^2 = rhs.
Int rhs(const Context& ctx, const SeriesChoice& choice);

/// General conditions on (p1, q1); precondition: the series equation holds.
ConditionReport check_AG(const Context& ctx, int eps, const Int& p1, const Int& q1);
ConditionReport check_BG(const Context& ctx, int eps, const Int& p1, const Int& q1);

/// Singular conditions on (p1, q1); vacuous when gamma = 1.
ConditionReport check_AS(const Context& ctx, int eps, const Int& p1, const Int& q1);
ConditionReport check_BS(const Context& ctx, int eps, const Int& p1, const Int& q1);

/// Conjunction of the general and singular clause families, without the
/// equation precondition; residue-safe (clause moduli divide
/// branch_modulus).  This is the predicate fed to the Pell search.
bool branch_clauses_pass(const Context& ctx, Series series, const Int& p1,
                         const Int& q1);

/// lcm of every (p1, q1)-clause modulus of the series conditions.
Int branch_modulus(const Context& ctx, Series series);

/// The five condition groups on coordinates (x, y) of a candidate element
/// with gamma*x^2 - delta*y^2 = 4*a1^2*b1^2*c^2/gamma.
ConditionReport check_thm313(const Context& ctx, Series series, const Int& x,
                             const Int& y);

/// Intermediate conditions on (alpha, p, q) with alpha square-free,
/// alpha | 2*a1*b1*c and p^2 - gamma*delta*q^2 = 4*a1*b1*c/alpha.
ConditionReport check_Gprime(const Context& ctx, const Int& alpha, const Int& p,
                             const Int& q);
ConditionReport check_Aprime(const Context& ctx, const Int& alpha, const Int& p,
                             const Int& q);
ConditionReport check_Bprime(const Context& ctx, const Int& alpha, const Int& p,
                             const Int& q);

/// (x, y) = (2*a1*b1*c/gamma + alpha*delta*q^2, alpha*p*q), sign-normalized
/// to x > 0.
LatticeElement associated_xy(const Context& ctx, const Int& alpha, const Int& p,
                             const Int& q);

/// Series image (x, y) of (p1, q1), sign-normalized; agrees with
/// associated_xy on the reconstructed (alpha, p, q).
LatticeElement associated_xy_from_pq(const Context& ctx, const SeriesChoice& choice,
                                     const Int& p1, const Int& q1);

struct PqPair {
  Int p1, q1;
};

/// (p1, q1) of a lattice element via the pairing quotients; throws
/// DivisibilityError naming the failing quotient.
PqPair element_to_pq(const Context& ctx, Series series, const LatticeElement& h1);

/// Element-level criterion: square, pairing congruence and its sharpness,
/// non-divisibility, then the singular conditions on the derived (p1, q1).
ConditionReport check_element(const Context& ctx, const SeriesChoice& choice,
                              const LatticeElement& h1);

/// Image -P/c + eps*(P . h1)*h1/(b1*c^2) (a-series; a1 for b-series); the
/// canonical nef class of the moduli side written in the source lattice.
LatticeElement nef_image(const Context& ctx, const SeriesChoice& choice,
                         const LatticeElement& h1);

/// Independent literal specializations used as cross-validation oracles.
ConditionReport check_gamma1(const Context& ctx, const SeriesChoice& choice,
                             const LatticeElement& h1);
ConditionReport check_gamma2(const Context& ctx, const SeriesChoice& choice,
                             const LatticeElement& h1);

}  // namespace k3sc
