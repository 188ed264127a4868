#pragma once

#include <optional>
#include <vector>

#include "k3sc/decision.hpp"

namespace k3sc {

/// One divisorial condition on moduli: the pair (mu-class, delta) together
/// with the series/sign branch and a verified witness.  The witness is
/// stored so that it satisfies the branch conditions for mu = mu_class.
struct DivisorialLabel {
  Int mu_class;  // canonical representative min(mu, n_x - mu)
  Int delta;
  Series series;
  int eps;
  Solution witness;
};

/// All delta <= delta_max in the branch set for the given mu class, with
/// witnesses; complete within the range.
std::vector<DivisorialLabel> delta_set(const Int& r, const Int& s, const Int& d,
                                       const Int& gamma, const Int& mu,
                                       Series series, int eps, const Int& delta_max);

/// Union over all mu classes, both series, both signs; sorted by
/// (delta, mu_class, series, eps descending).
std::vector<DivisorialLabel> delta_union(const Int& r, const Int& s, const Int& d,
                                         const Int& gamma, const Int& delta_max);

/// Replace a q = 0 witness by one with q != 0 from the same branch.
DivisorialLabel rewitness(const Int& r, const Int& s, const Int& d,
                          const Int& gamma, const DivisorialLabel& label);

/// Further members of the same branch set with strictly increasing delta,
/// obtained by translating the witness p-coordinate along the fixed
/// congruence class; each member is re-verified before being emitted.
/// Throws DegenerateWitness when the label's witness has q = 0.
std::vector<DivisorialLabel> generate_family(const Int& r, const Int& s,
                                             const Int& d, const Int& gamma,
                                             const DivisorialLabel& label,
                                             int count);

struct NonEmptinessReport {
  bool found = false;
  std::optional<DivisorialLabel> first;
  std::vector<DivisorialLabel> family;
  Int delta_max;
  // an empty scan is inconclusive, never a refutation
  bool inconclusive() const { return !found; }
};

/// Search all mu classes, both series, both signs for gamma = 1 members,
/// smallest delta first; generates a small family from the first hit.
NonEmptinessReport gamma1_nonempty(const Int& r, const Int& s, const Int& d,
                                   const Int& delta_max);

}  // namespace k3sc
