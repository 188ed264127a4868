#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "k3sc/ints.hpp"

namespace k3sc {

/// The indefinite equation gamma*p^2 - delta*q^2 = N, gamma*delta >= 1, N != 0.
struct FormEquation {
  Int gamma, delta, N;
};

/// Minimal (t, u) with t^2 - gamma*delta*u^2 = 1, u >= 1.  Acts on solutions
/// by (p, q) -> (t*p + delta*u*q, gamma*u*p + t*q), preserving the form.
struct Automorph {
  Int t, u;
};

struct Solution {
  Int p, q;
  bool operator==(const Solution& o) const { return p == o.p && q == o.q; }
};

/// One equivalence class of solutions under <automorph, negation>, named by
/// its canonical representative (lexicographically minimal (|q|, |p|), ties
/// broken toward p > 0 then q >= 0).
struct PellOrbit {
  Solution rep;
  int orbit_id;
};

/// nullopt when gamma*delta is a perfect square (no hyperbolic automorph).
std::optional<Automorph> fundamental_automorph(const Int& gamma, const Int& delta);

/// Complete, duplicate-free set of orbit representatives; empty iff the
/// equation has no integer solutions.  Square discriminants fall back to
/// divisor enumeration and return the full finite solution set as
/// singleton orbits.
std::vector<PellOrbit> solve_orbits(const FormEquation& eq);

/// All solutions with |q| <= q_max, both signs, sorted by (p, q).
std::vector<Solution> enumerate_bounded(const FormEquation& eq, const Int& q_max);

/// Predicate on (p mod modulus, q mod modulus); must respect that residue
/// domain (the solver only feeds it canonical residues).
struct CongruenceQuery {
  Int modulus;
  std::function<bool(const Int& p_mod, const Int& q_mod)> predicate;
};

/// Exact existence decision: walks every orbit's purely periodic residue
/// cycle mod query.modulus, in increasing automorph-power radius, and
/// reconstructs the first witness exactly.  With require_nonzero_q, a q = 0
/// hit is replaced by the same residue state one period further out.
std::optional<Solution> exists_solution_with_congruences(
    const FormEquation& eq, const CongruenceQuery& query,
    bool require_nonzero_q = false);

}  // namespace k3sc
