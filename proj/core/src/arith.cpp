#include "k3sc/arith.hpp"

namespace k3sc {

std::vector<Int> Factorization::primes() const {
  std::vector<Int> ps;
  ps.reserve(factors.size());
  for (const auto& [p, e] : factors) ps.push_back(p);
  return ps;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (divides(2, n)) return false;
  for (Int d = 3; d * d <= n; d += 2)
    if (divides(d, n)) return false;
  return true;
}

Factorization factorize(const Int& n) {
  if (n < 1) throw Error(ErrorKind::ZeroInput, "factorize requires n >= 1");
  Factorization f;
  f.value = n;
  Int rest = n;
  auto strip = [&](const Int& p) {
    unsigned e = 0;
    while (divides(p, rest)) {
      rest = exact_div(rest, p);
      ++e;
    }
    if (e > 0) f.factors.emplace_back(p, e);
  };
  strip(2);
  for (Int d = 3; d * d <= rest; d += 2) strip(d);
  if (rest > 1) f.factors.emplace_back(rest, 1);
  return f;
}

Int p_component(const Int& n, const Int& l) {
  if (n < 1) throw Error(ErrorKind::ZeroInput, "p_component requires n >= 1");
  if (!is_prime(l))
    throw Error(ErrorKind::NotPrime, "p_component: " + l.get_str() + " is not prime");
  Int comp = 1, rest = n;
  while (divides(l, rest)) {
    rest = exact_div(rest, l);
    comp *= l;
  }
  return comp;
}

SquareFreeDecomposition squarefree_decompose(const Int& n) {
  if (n == 0) throw Error(ErrorKind::ZeroInput, "squarefree_decompose(0)");
  SquareFreeDecomposition d;
  d.input = n;
  d.sign = n < 0 ? -1 : 1;
  d.squarefree = 1;
  d.root = 1;
  for (const auto& [p, e] : factorize(abs(n)).factors) {
    if (e % 2 == 1) d.squarefree *= p;
    for (unsigned i = 0; i < e / 2; ++i) d.root *= p;
  }
  return d;
}

Residue crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
  if (m1 < 1 || m2 < 1)
    throw Error(ErrorKind::ZeroInput, "crt_pair requires positive moduli");
  Int g = gcd(m1, m2);
  if (!congruent(r1, r2, g))
    throw Error(ErrorKind::IncompatibleCongruence,
                "crt_pair: " + r1.get_str() + " mod " + m1.get_str() + " vs " +
                    r2.get_str() + " mod " + m2.get_str());
  // r = r1 + m1 * k with k = (r2-r1)/g * inv(m1/g) mod m2/g
  Int m2g = exact_div(m2, g);
  Int k = 0;
  if (m2g > 1)
    k = mod_floor(exact_div(r2 - r1, g) * mod_inverse(exact_div(m1, g), m2g), m2g);
  Int m = lcm(m1, m2);
  return Residue{mod_floor(r1 + m1 * k, m), m};
}

Int mod_inverse(const Int& a, const Int& m) {
  if (m < 1) throw Error(ErrorKind::ZeroInput, "mod_inverse requires m >= 1");
  if (m == 1) return 0;
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorKind::NonInvertible,
                a.get_str() + " is not invertible mod " + m.get_str());
  return mod_floor(inv, m);
}

}  // namespace k3sc
