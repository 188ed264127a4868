#include "k3sc/lattice.hpp"

namespace k3sc {

PolarizedLattice2 make_lattice(const Int& n, const Int& gamma, const Int& delta,
                               const Int& mu) {
  if (n < 1) throw Error(ErrorKind::InvalidLattice, "n must be positive");
  PolarizedLattice2 lat{n, gamma, delta, mod_floor(mu, n)};
  validate(lat);
  return lat;
}

void validate(const PolarizedLattice2& lat) {
  if (lat.n < 1) throw Error(ErrorKind::InvalidLattice, "n must be positive");
  if (lat.gamma < 1 || lat.delta < 1)
    throw Error(ErrorKind::InvalidLattice, "gamma and delta must be positive");
  if (gcd(lat.mu, lat.n) != 1)
    throw Error(ErrorKind::InvalidLattice,
                "gcd(mu,n) = " + gcd(lat.mu, lat.n).get_str() + " != 1");
  if (!divides(2, lat.n * lat.gamma))
    throw Error(ErrorKind::InvalidLattice, "n*gamma must be even");
  if (!divides(2, lat.n * lat.delta))
    throw Error(ErrorKind::InvalidLattice, "n*delta must be even");
  if (!congruent(lat.delta, lat.mu * lat.mu * lat.gamma, 2 * lat.n))
    throw Error(ErrorKind::InvalidLattice,
                "delta != mu^2*gamma mod 2n (" + lat.delta.get_str() +
                    " vs " + Int(lat.mu * lat.mu * lat.gamma).get_str() + " mod " +
                    Int(2 * lat.n).get_str() + ")");
}

Int canonical_mu(const PolarizedLattice2& lat) {
  Int m = mod_floor(lat.mu, lat.n);
  return std::min(m, Int(lat.n - m));
}

bool is_member(const PolarizedLattice2& lat, const LatticeElement& z) {
  return congruent(z.x, lat.mu * z.y, lat.n);
}

static void require_member(const PolarizedLattice2& lat, const LatticeElement& z) {
  if (!is_member(lat, z))
    throw Error(ErrorKind::NotInLattice, "(" + z.x.get_str() + "," + z.y.get_str() +
                                             "): x != mu*y mod n");
}

Int norm(const PolarizedLattice2& lat, const LatticeElement& z) {
  require_member(lat, z);
  return exact_div(lat.gamma * z.x * z.x - lat.delta * z.y * z.y, lat.n);
}

Int inner_with_P(const PolarizedLattice2& lat, const LatticeElement& z) {
  require_member(lat, z);
  return lat.gamma * z.x;
}

Int inner_with_f(const PolarizedLattice2& lat, const LatticeElement& z) {
  require_member(lat, z);
  return -lat.delta * z.y;
}

Int gamma_of(const PolarizedLattice2& lat, const LatticeElement& z) {
  if (z.x == 0 && z.y == 0) throw Error(ErrorKind::ZeroElement, "gamma_of(0)");
  require_member(lat, z);
  Int with_P = lat.gamma * z.x;
  Int with_f = lat.delta * z.y;
  Int with_gen = exact_div(lat.mu * lat.gamma * z.x - lat.delta * z.y, lat.n);
  return gcd(gcd(with_P, with_f), with_gen);
}

bool is_primitive(const PolarizedLattice2& lat, const LatticeElement& z) {
  if (z.x == 0 && z.y == 0) throw Error(ErrorKind::ZeroElement, "is_primitive(0)");
  require_member(lat, z);
  Int t = exact_div(z.x - lat.mu * z.y, lat.n);
  return gcd(gcd(z.x, z.y), t) == 1;
}

bool is_dual_member(const PolarizedLattice2& lat, const DualElement& e) {
  return congruent(lat.mu * e.v, e.w, lat.n);
}

bool is_member_dual_coords(const PolarizedLattice2& lat, const DualElement& e) {
  if (!divides(lat.gamma, e.v) || !divides(lat.delta, e.w)) return false;
  return congruent(exact_div(e.v, lat.gamma), lat.mu * exact_div(e.w, lat.delta),
                   lat.n);
}

UStarClass u_star(const PolarizedLattice2& lat) {
  Int mu_inv = lat.n == 1 ? Int(0) : mod_inverse(lat.mu, lat.n);
  Int modulus = lat.n * lat.delta;
  UStarClass u;
  u.rep = DualElement{0, mod_floor(mu_inv * lat.delta, modulus)};
  u.modulus = modulus;
  u.order = lat.n;
  return u;
}

PolarizedLattice2 ny_invariants(const MukaiInvariants& inv, const GammaSplit& split,
                                const Int& delta, const Int& mu) {
  // sanity-check the N(X) data first
  make_lattice(split.n_x, split.gamma, delta, mu);
  Int nu = mod_floor(inv.m_ab * mu, split.n_y);
  nu = std::min(nu, Int(split.n_y - nu));
  if (split.n_y == 1) nu = 0;
  return make_lattice(split.n_y, split.gamma, delta, nu);
}

DiscImage disc_identification(const MukaiInvariants& inv, const GammaSplit& split,
                              const Int& delta, const Int& mu, const Int& n_coord,
                              const Int& k_coord) {
  PolarizedLattice2 lat_x = make_lattice(split.n_x, split.gamma, delta, mu);
  DualElement source{inv.c * n_coord, k_coord};
  if (!is_dual_member(lat_x, source))
    throw Error(ErrorKind::NotInDual, "c*n*P* + k*f* is not in the dual lattice");
  Int m = m_abd_gamma(inv, inv.d, Int(1)).modulus;  // 2ab/d^2
  Int m_red = mod_floor(inv.m_ab, m);
  return DiscImage{mod_floor(m_red * n_coord, m), k_coord};
}

}  // namespace k3sc
