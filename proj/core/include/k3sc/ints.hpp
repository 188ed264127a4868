#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace k3sc {

/// Exact arbitrary-precision integer used throughout the library.
using Int = mpz_class;

enum class ErrorKind {
  NotPrime,
  ZeroInput,
  NonInvertible,
  IncompatibleCongruence,
  Primitivity,
  Divisibility,
  Gamma,
  NoLift,
  InvalidLattice,
  NotInLattice,
  ZeroElement,
  NotInDual,
  EquationMismatch,
  AlphaNotSquareFree,
  NonIntegral,
  Context,
  WrongGamma,
  DegenerateWitness,
  Predicate,
  Parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

/// Canonical residue in [0, m), m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += k3sc::abs(m);
  return r;
}

/// a = b (mod m)
inline bool congruent(const Int& a, const Int& b, const Int& m) {
  return mpz_congruent_p(a.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t()) != 0;
}

inline bool divides(const Int& d, const Int& a) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Quotient a/d; d must divide a exactly.
inline Int exact_div(const Int& a, const Int& d) {
  if (!divides(d, a))
    throw Error(ErrorKind::NonIntegral,
                "non-exact division " + a.get_str() + "/" + d.get_str());
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return q;
}

/// floor(sqrt(n)), n >= 0.
inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_perfect_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline bool fits_i64(const Int& n) {
  return n >= Int(INT64_MIN) && n <= Int(INT64_MAX);
}

inline int64_t to_i64(const Int& n) {
  if (!fits_i64(n))
    throw Error(ErrorKind::NonIntegral, "value exceeds 64 bits: " + n.get_str());
  return static_cast<int64_t>(mpz_get_si(n.get_mpz_t()));
}

}  // namespace k3sc
