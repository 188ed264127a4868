#pragma once

#include "k3sc/arith.hpp"
#include "k3sc/ints.hpp"

namespace k3sc {

/// Rank/Euler data (r, s) of an isotropic Mukai vector (r, H, s) with
/// H^2 = 2rs, together with the divisibility d of H (H/d primitive).
struct MukaiInput {
  Int r, s, d;
};

struct MukaiInvariants {
  Int r, s, d;
  Int c;          // gcd(r, s)
  Int a, b;       // r/c, s/c, coprime
  Int d_a, d_b;   // gcd(d,a), gcd(d,b); d = d_a*d_b, d_a^2 | a, d_b^2 | b
  Int a1, b1;     // a/d_a^2, b/d_b^2
  Int m_ab;       // canonical residue mod 2ab: = -1 mod 2a, = +1 mod 2b

  Int two_ab() const { return 2 * a * b; }
};

/// Splitting of the pairing invariant gamma = gamma2 * gamma_a * gamma_b
/// together with the reduced moduli of the two lattices involved.
struct GammaSplit {
  Int gamma;
  Int gamma_a, gamma_b, gamma2;
  Int a2, b2, e2;  // a1/gamma_a, b1/gamma_b, 2/gamma2
  Int n_x;         // 2*a1*b1*c^2/gamma
  Int n_y;         // 2*a1*b1/gamma
};

MukaiInvariants derive_invariants(const MukaiInput& input);

/// Validates gamma | 2*a1*b1 and gamma2 | 2, then splits.
GammaSplit split_gamma(const MukaiInvariants& inv, const Int& gamma);

/// gcd(c, gamma*d): the index obstruction; 1 exactly when the two
/// transcendental period lattices can be identified.
Int n_of_v(const MukaiInvariants& inv, const Int& d, const Int& gamma);

/// m(a,b) reduced mod 2ab/(d^2*gamma); requires gamma*d^2 | 2ab.
Residue m_abd_gamma(const MukaiInvariants& inv, const Int& d, const Int& gamma);

/// Sharpen mu0 to a unit mu, congruent to mu0 mod 2a1b1c^2/gamma, with
/// delta = gamma*mu^2 mod (4a1b1c^2/gamma)*gamma0*u.  The scan over the
/// finitely many candidates mu0 + k*(2a1b1c^2/gamma) is exhaustive;
/// throws NoLift when the hypotheses fail or no candidate works.
Int lift_mu(const Int& mu0, const Int& delta, const MukaiInvariants& inv,
            const GammaSplit& split, const Int& gamma0, const Int& u);

}  // namespace k3sc
