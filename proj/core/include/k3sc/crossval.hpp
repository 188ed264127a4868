#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "k3sc/criteria.hpp"

namespace k3sc {

struct SweepResult {
  std::string suite;
  long checked = 0;
  bool ok = true;
  std::string counterexample;  // first failure, empty when ok
};

struct ContextParams {
  Int r, s, d, gamma, delta, mu;
};

/// Deterministic family: a1, b1 coprime and c up to max_inv, the listed
/// gamma values where admissible, every unit mu, every admissible
/// delta <= delta_max (d = 1 throughout).
std::vector<ContextParams> standard_context_family(long max_inv,
                                                   const std::vector<long>& gammas,
                                                   long delta_max);

/// Signed square-free divisors of n, sorted by (|alpha|, sign).
std::vector<Int> squarefree_divisors_signed(const Int& n);

/// Solution-set equality between the constrained coordinate equation and
/// the image of the associated-solution map, per context.
SweepResult sweep_bijection(uint64_t seed, bool full);

/// Three-way equivalence of the element conditions, the intermediate
/// conditions, and the reduced-pair conditions along the associated maps.
SweepResult sweep_reduction(uint64_t seed, bool full);

/// Agreement of the general element checker with the literal gamma = 1, 2
/// specializations.
SweepResult sweep_specialization(uint64_t seed, bool full);

/// Orbit-closure completeness of the Pell solver against bounded
/// brute-force enumeration, including square discriminants.
SweepResult sweep_pell(uint64_t seed, bool full);

}  // namespace k3sc
