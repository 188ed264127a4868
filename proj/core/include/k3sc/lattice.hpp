#pragma once

#include "k3sc/ints.hpp"
#include "k3sc/mukai.hpp"

namespace k3sc {

/// Rank-2 even hyperbolic lattice S = [P, f, (mu*P + f)/n] with a fixed
/// primitive vector P: P^2 = n*gamma, f^2 = -n*delta, det S = -gamma*delta.
/// Members are z = (x*P + y*f)/n with x = mu*y mod n.
struct PolarizedLattice2 {
  Int n;  // reduced modulus
  Int gamma;
  Int delta;
  Int mu;  // unit mod n, canonical in [0, n)
};

/// Numerator coordinates (x, y) of z = (x*P + y*f)/n.
struct LatticeElement {
  Int x, y;
  bool operator==(const LatticeElement& o) const { return x == o.x && y == o.y; }
};

/// Coordinates (v, w) of v*P* + w*f*, where P* = P/(n*gamma), f* = f/(n*delta).
struct DualElement {
  Int v, w;
};

/// The canonical class u*(P) = mu^{-1}*delta*f* + Zf in K(P)*/K(P).
struct UStarClass {
  DualElement rep;  // rep.v = 0, rep.w canonical mod modulus
  Int modulus;      // n*delta (f = n*delta*f*)
  Int order;        // order in K(P)*/K(P), always n
};

/// Construct with mu reduced into [0, n) and all invariants checked.
PolarizedLattice2 make_lattice(const Int& n, const Int& gamma, const Int& delta,
                               const Int& mu);

/// Throws InvalidLattice naming the violated clause.
void validate(const PolarizedLattice2& lat);

/// mu folded to the +- class representative min(mu, n - mu).
Int canonical_mu(const PolarizedLattice2& lat);

bool is_member(const PolarizedLattice2& lat, const LatticeElement& z);

/// z^2 = (gamma*x^2 - delta*y^2)/n, always an even integer for members.
Int norm(const PolarizedLattice2& lat, const LatticeElement& z);

Int inner_with_P(const PolarizedLattice2& lat, const LatticeElement& z);
Int inner_with_f(const PolarizedLattice2& lat, const LatticeElement& z);

/// Positive generator of the pairing ideal z . S.
Int gamma_of(const PolarizedLattice2& lat, const LatticeElement& z);

/// gcd(x, y, (x - mu*y)/n) = 1.
bool is_primitive(const PolarizedLattice2& lat, const LatticeElement& z);

/// Dual-lattice membership of v*P* + w*f*: mu*v - w = 0 mod n.
bool is_dual_member(const PolarizedLattice2& lat, const DualElement& e);

/// Membership of v*P* + w*f* in S itself, in dual coordinates.
bool is_member_dual_coords(const PolarizedLattice2& lat, const DualElement& e);

UStarClass u_star(const PolarizedLattice2& lat);

/// Lattice data (n_y, gamma, delta, nu) of the moduli-side lattice, with
/// nu = m(a,b)*mu mod n_y canonicalized over the sign ambiguity.
PolarizedLattice2 ny_invariants(const MukaiInvariants& inv, const GammaSplit& split,
                                const Int& delta, const Int& mu);

/// Image of c*n*P* + k* under the discriminant-group identification:
/// coefficient pair (m(a,b)*n, k) with m(a,b) taken mod 2ab/d^2.
struct DiscImage {
  Int h_coeff;  // m(a,b)*n reduced mod 2ab/d^2
  Int k_coeff;
};
DiscImage disc_identification(const MukaiInvariants& inv, const GammaSplit& split,
                              const Int& delta, const Int& mu, const Int& n_coord,
                              const Int& k_coord);

}  // namespace k3sc
