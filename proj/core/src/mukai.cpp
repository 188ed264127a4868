#include "k3sc/mukai.hpp"

namespace k3sc {

MukaiInvariants derive_invariants(const MukaiInput& input) {
  if (input.r < 1 || input.s < 1 || input.d < 1)
    throw Error(ErrorKind::Context, "r, s, d must be positive");
  MukaiInvariants inv;
  inv.r = input.r;
  inv.s = input.s;
  inv.d = input.d;
  inv.c = gcd(input.r, input.s);
  inv.a = exact_div(input.r, inv.c);
  inv.b = exact_div(input.s, inv.c);
  Int gcd_cd = gcd(inv.c, input.d);
  if (gcd_cd != 1)
    throw Error(ErrorKind::Primitivity,
                "Mukai vector not primitive: gcd(c,d)=" + gcd_cd.get_str());
  if (!divides(input.d * input.d, inv.a * inv.b))
    throw Error(ErrorKind::Divisibility,
                "d^2=" + Int(input.d * input.d).get_str() + " does not divide ab=" +
                    Int(inv.a * inv.b).get_str());
  inv.d_a = gcd(input.d, inv.a);
  inv.d_b = gcd(input.d, inv.b);
  // d = d_a*d_b and d_a^2 | a follow from d^2 | ab with gcd(a,b)=1
  inv.a1 = exact_div(inv.a, inv.d_a * inv.d_a);
  inv.b1 = exact_div(inv.b, inv.d_b * inv.d_b);
  inv.m_ab = crt_pair(-1, 2 * inv.a, 1, 2 * inv.b).value;
  return inv;
}

GammaSplit split_gamma(const MukaiInvariants& inv, const Int& gamma) {
  if (gamma < 1) throw Error(ErrorKind::Gamma, "gamma must be positive");
  Int two_a1b1 = 2 * inv.a1 * inv.b1;
  if (!divides(gamma, two_a1b1))
    throw Error(ErrorKind::Gamma, "gamma=" + gamma.get_str() +
                                      " does not divide 2*a1*b1=" + two_a1b1.get_str());
  GammaSplit g;
  g.gamma = gamma;
  g.gamma_a = gcd(inv.a1, gamma);
  g.gamma_b = gcd(inv.b1, gamma);
  g.gamma2 = exact_div(gamma, g.gamma_a * g.gamma_b);
  if (g.gamma2 != 1 && g.gamma2 != 2)
    throw Error(ErrorKind::Gamma,
                "gamma/(gamma_a*gamma_b)=" + g.gamma2.get_str() + " must divide 2");
  g.a2 = exact_div(inv.a1, g.gamma_a);
  g.b2 = exact_div(inv.b1, g.gamma_b);
  g.e2 = exact_div(Int(2), g.gamma2);
  g.n_x = exact_div(two_a1b1 * inv.c * inv.c, gamma);
  g.n_y = exact_div(two_a1b1, gamma);
  return g;
}

Int n_of_v(const MukaiInvariants& inv, const Int& d, const Int& gamma) {
  return gcd(inv.c, gamma * d);
}

Residue m_abd_gamma(const MukaiInvariants& inv, const Int& d, const Int& gamma) {
  Int mod = gamma * d * d;
  if (!divides(mod, inv.two_ab()))
    throw Error(ErrorKind::Gamma, "gamma*d^2 must divide 2ab");
  Int m = exact_div(inv.two_ab(), mod);
  return Residue{mod_floor(inv.m_ab, m), m};
}

Int lift_mu(const Int& mu0, const Int& delta, const MukaiInvariants& inv,
            const GammaSplit& split, const Int& gamma0, const Int& u) {
  const Int n = split.n_x;  // 2a1b1c^2/gamma
  if (u < 1 || gamma0 < 1) throw Error(ErrorKind::NoLift, "u, gamma0 must be positive");
  if (!divides(gamma0, split.gamma))
    throw Error(ErrorKind::NoLift, "gamma0 must divide gamma");
  if (gcd(u, exact_div(split.gamma, gamma0)) != 1)
    throw Error(ErrorKind::NoLift, "u must be coprime to gamma/gamma0");
  Int cc = inv.c * inv.c;
  if (!divides(u, exact_div(inv.a1 * inv.b1 * cc, split.gamma_a * split.gamma_b)))
    throw Error(ErrorKind::NoLift, "u must divide a1*b1*c^2/(gamma_a*gamma_b)");
  if (!congruent(delta, split.gamma * mu0 * mu0, 2 * n))
    throw Error(ErrorKind::NoLift, "delta != gamma*mu0^2 mod 4a1b1c^2/gamma");
  Int target = 2 * n * gamma0 * u;
  // delta - gamma*mu^2 mod target is periodic in k with period gamma0*u
  for (Int k = 0; k < gamma0 * u; ++k) {
    Int mu = mu0 + n * k;
    if (congruent(delta, split.gamma * mu * mu, target) &&
        gcd(mu, n * gamma0 * u) == 1)
      return mod_floor(mu, n * gamma0 * u);
  }
  throw Error(ErrorKind::NoLift, "no admissible lift of mu found");
}

}  // namespace k3sc
