#pragma once

#include <utility>
#include <vector>

#include "k3sc/ints.hpp"

namespace k3sc {

/// Complete prime factorization, primes strictly increasing.
struct Factorization {
  Int value;
  std::vector<std::pair<Int, unsigned>> factors;

  /// Primes of value, in increasing order.
  std::vector<Int> primes() const;
};

struct SquareFreeDecomposition {
  Int input;
  int sign;        // +1 or -1
  Int squarefree;  // positive, square-free
  Int root;        // positive; input = sign * squarefree * root^2
};

/// A residue class value mod modulus, value canonical in [0, modulus).
struct Residue {
  Int value;
  Int modulus;
};

bool is_prime(const Int& n);

/// Factor n >= 1 by deterministic trial division.
Factorization factorize(const Int& n);

/// l-component of n: the largest power of l dividing n. l must be prime.
Int p_component(const Int& n, const Int& l);

/// n = sign * squarefree * root^2 with squarefree square-free; n != 0.
SquareFreeDecomposition squarefree_decompose(const Int& n);

/// Unique residue mod lcm(m1,m2) congruent to r1 mod m1 and r2 mod m2.
/// Throws IncompatibleCongruence when r1 != r2 mod gcd(m1,m2).
Residue crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2);

/// b with a*b = 1 mod m; throws NonInvertible when gcd(a,m) != 1.
Int mod_inverse(const Int& a, const Int& m);

}  // namespace k3sc
