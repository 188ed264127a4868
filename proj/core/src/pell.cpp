#include "k3sc/pell.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <tuple>
#include <vector>

namespace k3sc {
namespace {

constexpr long kMaxPqaSteps = 2'000'000;
constexpr long kMaxCycleStates = 8'000'000;
// machine-word continued fractions are safe well below this magnitude
constexpr int64_t kSmallLimit = int64_t(1) << 40;

void validate_equation(const FormEquation& eq) {
  if (eq.gamma < 1 || eq.delta < 1)
    throw Error(ErrorKind::Context, "form equation requires gamma, delta >= 1");
  if (eq.N == 0) throw Error(ErrorKind::Context, "form equation requires N != 0");
}

// One step of the expansion of (P + sqrt(D))/Q records the partial
// quotient a_i; the convergent accumulators satisfy
// G_i^2 - D*B_i^2 = (-1)^(i+1) * Q0 * Q_(i+1), so exact G, B are needed
// only at steps where Q_(i+1) = +-1 and can be replayed from the
// quotients.  The driver below is generic over the integer type: int64
// for the common desk-scale case, Int beyond kSmallLimit.
template <typename I>
struct PqaDriver {
  I D, sqrtD;
  I P, Q;  // P_(i+1), Q_(i+1) after step()
  long i = -1;
  std::vector<I> quotients;

  PqaDriver(const I& P0, const I& Q0, const I& D_, const I& sqrtD_)
      : D(D_), sqrtD(sqrtD_), P(P0), Q(Q0) {}

  void step() {
    I a = cf_floor(P, Q);
    quotients.push_back(a);
    I Pn = a * Q - P;
    Q = (D - Pn * Pn) / Q;
    P = Pn;
    ++i;
  }

  I cf_floor(const I& p, const I& q) const {
    I num = p + sqrtD;
    if (q > 0) return num >= 0 ? I(num / q) : I(-((-num + q - 1) / q));
    I aq = -q;
    I fl = num >= 0 ? I(num / aq) : I(-((-num + aq - 1) / aq));
    return I(-fl - 1);
  }
};

// Exact convergent pair (G_i, B_i) from the recorded quotients.
template <typename I>
std::pair<Int, Int> replay_convergents(const Int& P0, const Int& Q0,
                                       const std::vector<I>& quotients,
                                       long upto) {
  Int g_prev = -P0, g = Q0;
  Int b_prev = 1, b = 0;
  for (long k = 0; k <= upto; ++k) {
    Int a(quotients[static_cast<size_t>(k)]);
    Int gn = a * g + g_prev;
    Int bn = a * b + b_prev;
    g_prev = g;
    b_prev = b;
    g = gn;
    b = bn;
  }
  return {g, b};
}

struct PqaHit {
  long index;   // i with Q_(i+1) = +-1
  int q_sign;   // sign of Q_(i+1)
};

// Run the expansion until the (P, Q) pair cycles, collecting every index
// with Q = +-1.  Returns the quotients through the driver reference.
template <typename I>
std::vector<PqaHit> collect_unit_hits(PqaDriver<I>& pqa) {
  std::vector<PqaHit> hits;
  std::set<std::pair<I, I>> seen;
  for (long steps = 0; steps < kMaxPqaSteps; ++steps) {
    pqa.step();
    if (pqa.Q == 1 || pqa.Q == -1)
      hits.push_back(PqaHit{pqa.i, pqa.Q == 1 ? 1 : -1});
    if (!seen.insert({pqa.P, pqa.Q}).second) return hits;
  }
  throw Error(ErrorKind::Context, "continued fraction did not close");
}

bool fits_small(const Int& v) { return fits_i64(v) && abs(v) < kSmallLimit; }

// hits plus quotient replay context, independent of integer width
struct Expansion {
  std::vector<PqaHit> hits;
  std::vector<Int> quotients;
};

Expansion expand(const Int& P0, const Int& Q0, const Int& D) {
  Expansion out;
  Int s = isqrt(D);
  if (fits_small(P0) && fits_small(Q0) && fits_small(D)) {
    // all intermediates stay far below 2^127 for |P0|, Q0, D < 2^40
    PqaDriver<__int128> pqa(to_i64(P0), to_i64(Q0), to_i64(D), to_i64(s));
    out.hits = collect_unit_hits(pqa);
    out.quotients.reserve(pqa.quotients.size());
    for (__int128 a : pqa.quotients) {
      if (a > INT64_MAX || a < INT64_MIN)
        throw Error(ErrorKind::Context, "partial quotient overflow");
      out.quotients.push_back(Int(static_cast<int64_t>(a)));
    }
  } else {
    PqaDriver<Int> pqa(P0, Q0, D, s);
    out.hits = collect_unit_hits(pqa);
    out.quotients = std::move(pqa.quotients);
  }
  return out;
}

struct Units {
  Automorph plus;                  // minimal norm +1
  std::optional<Automorph> minus;  // minimal norm -1, when the period is odd
};

Units compute_units(const Int& D) {
  Expansion exp = expand(0, 1, D);
  Units units;
  bool have_plus = false;
  for (const PqaHit& hit : exp.hits) {
    if (hit.q_sign != 1) continue;
    // value = (-1)^(i+1)
    bool norm_plus = (hit.index + 1) % 2 == 0;
    if (norm_plus && !have_plus) {
      auto [g, b] = replay_convergents(Int(0), Int(1), exp.quotients, hit.index);
      units.plus = Automorph{g, b};
      have_plus = true;
      break;  // hits come in index order; the first +1 hit is minimal
    }
    if (!norm_plus && !units.minus) {
      auto [g, b] = replay_convergents(Int(0), Int(1), exp.quotients, hit.index);
      units.minus = Automorph{g, b};
    }
  }
  if (!have_plus) {
    // odd period: the +1 unit lives one period further out; compose the
    // -1 unit with itself
    if (!units.minus)
      throw Error(ErrorKind::Context, "no unit found in the principal cycle");
    const Automorph& m = *units.minus;
    units.plus = Automorph{m.t * m.t + D * m.u * m.u, 2 * m.t * m.u};
  }
  return units;
}

struct XY {
  Int x, y;
};

// Class representatives of primitive solutions of x^2 - D*y^2 = m,
// D non-square: one expansion per square root z of D mod |m|.
std::vector<XY> primitive_class_reps(const Int& D, const Int& m, const Units& units) {
  std::vector<XY> reps;
  Int am = abs(m);
  auto push_with_sign = [&](const Int& x, const Int& y, const Int& value) {
    if (value == m) {
      reps.push_back(XY{x, y});
    } else if (value == -m && units.minus) {
      // compose with the norm -1 unit to flip the represented sign
      const Automorph& w = *units.minus;
      reps.push_back(XY{w.t * x + D * w.u * y, w.u * x + w.t * y});
    }
  };
  std::vector<Int> roots;
  if (fits_small(am)) {
    uint64_t m64 = static_cast<uint64_t>(to_i64(am));
    uint64_t d64 = static_cast<uint64_t>(to_i64(mod_floor(D, am)));
    for (uint64_t z = 0; z < m64; ++z) {
      unsigned __int128 sq = static_cast<unsigned __int128>(z) * z;
      if (static_cast<uint64_t>(sq % m64) == d64)
        roots.push_back(2 * Int(z) > am ? Int(Int(z) - am) : Int(z));
    }
  } else {
    for (Int z = 0; z < am; ++z)
      if (congruent(z * z, D, am)) roots.push_back(2 * z > am ? Int(z - am) : z);
  }
  for (const Int& z : roots) {
    if (am == 1) push_with_sign(1, 0, 1);  // trivial convergent (G_-1, B_-1)
    Expansion exp = expand(z, am, D);
    for (const PqaHit& hit : exp.hits) {
      Int value = ((hit.index + 1) % 2 == 0 ? am : Int(-am)) * hit.q_sign;
      if (value != m && !(value == -m && units.minus)) continue;
      auto [g, b] = replay_convergents(z, am, exp.quotients, hit.index);
      push_with_sign(g, b, value);
    }
  }
  return reps;
}

using Key = std::tuple<Int, Int, int, int>;

Solution fold_sign(const Solution& s) {
  Solution neg{-s.p, -s.q};
  auto flags = [](const Solution& v) {
    return std::make_pair(v.p > 0 ? 0 : 1, v.q >= 0 ? 0 : 1);
  };
  return flags(s) <= flags(neg) ? s : neg;
}

Key orbit_key(const Solution& s) {
  Solution c = fold_sign(s);
  return Key{abs(c.q), abs(c.p), c.p > 0 ? 0 : 1, c.q >= 0 ? 0 : 1};
}

Solution apply_automorph(const FormEquation& eq, const Automorph& a,
                         const Solution& s) {
  return Solution{a.t * s.p + eq.delta * a.u * s.q,
                  eq.gamma * a.u * s.p + a.t * s.q};
}

Solution apply_automorph_inverse(const FormEquation& eq, const Automorph& a,
                                 const Solution& s) {
  return Solution{a.t * s.p - eq.delta * a.u * s.q,
                  -eq.gamma * a.u * s.p + a.t * s.q};
}

// Walk to the valley of the orbit key; |q| is unimodal along the orbit, so
// a greedy descent in both directions terminates at the canonical point.
Solution canonicalize(const FormEquation& eq, const Automorph& a, Solution s) {
  bool moved = true;
  while (moved) {
    moved = false;
    for (Solution next = apply_automorph(eq, a, s); orbit_key(next) < orbit_key(s);
         next = apply_automorph(eq, a, next)) {
      s = next;
      moved = true;
    }
    for (Solution next = apply_automorph_inverse(eq, a, s);
         orbit_key(next) < orbit_key(s);
         next = apply_automorph_inverse(eq, a, next)) {
      s = next;
      moved = true;
    }
  }
  return fold_sign(s);
}

std::vector<PellOrbit> orbits_square_disc(const FormEquation& eq) {
  // gamma*delta = e^2: (gamma*p - e*q)(gamma*p + e*q) = gamma*N, finitely
  // many divisor splittings.
  Int e = isqrt(eq.gamma * eq.delta);
  Int M = eq.gamma * eq.N;
  Int aM = abs(M);
  std::set<std::pair<Int, Int>> found;
  std::vector<Int> divisors;
  for (Int u = 1; u * u <= aM; ++u)
    if (divides(u, aM)) {
      divisors.push_back(u);
      if (u * u != aM) divisors.push_back(exact_div(aM, u));
    }
  for (const Int& u : divisors)
    for (int sign : {1, -1}) {
      Int A = sign * u;
      Int B = exact_div(M, A);
      if (!divides(2 * eq.gamma, A + B)) continue;
      if (!divides(2 * e, B - A)) continue;
      Solution s = fold_sign(Solution{exact_div(A + B, 2 * eq.gamma),
                                      exact_div(B - A, 2 * e)});
      if (eq.gamma * s.p * s.p - eq.delta * s.q * s.q == eq.N)
        found.insert({s.p, s.q});
    }
  std::vector<Solution> sols;
  for (const auto& [p, q] : found) sols.push_back(Solution{p, q});
  std::sort(sols.begin(), sols.end(), [](const Solution& l, const Solution& r) {
    return orbit_key(l) < orbit_key(r);
  });
  std::vector<PellOrbit> orbits;
  for (const Solution& s : sols)
    orbits.push_back(PellOrbit{s, static_cast<int>(orbits.size())});
  return orbits;
}

}  // namespace

std::optional<Automorph> fundamental_automorph(const Int& gamma, const Int& delta) {
  if (gamma < 1 || delta < 1)
    throw Error(ErrorKind::Context, "fundamental_automorph requires gamma*delta >= 1");
  Int D = gamma * delta;
  if (is_perfect_square(D)) return std::nullopt;
  return compute_units(D).plus;
}

std::vector<PellOrbit> solve_orbits(const FormEquation& eq) {
  validate_equation(eq);
  Int D = eq.gamma * eq.delta;
  if (is_perfect_square(D)) return orbits_square_disc(eq);

  Units units = compute_units(D);
  Int M = eq.gamma * eq.N;
  std::set<std::pair<Int, Int>> reps;
  for (Int f = 1; f * f <= abs(M); ++f) {
    if (!divides(f * f, M)) continue;
    Int m = exact_div(M, f * f);
    for (const XY& xy : primitive_class_reps(D, m, units)) {
      Int x = f * xy.x, y = f * xy.y;
      if (!divides(eq.gamma, x)) continue;  // class-invariant filter
      Solution s =
          canonicalize(eq, units.plus, Solution{exact_div(x, eq.gamma), y});
      reps.insert({s.p, s.q});
    }
  }
  std::vector<Solution> sols;
  for (const auto& [p, q] : reps) sols.push_back(Solution{p, q});
  std::sort(sols.begin(), sols.end(), [](const Solution& l, const Solution& r) {
    return orbit_key(l) < orbit_key(r);
  });
  std::vector<PellOrbit> orbits;
  for (const Solution& s : sols)
    orbits.push_back(PellOrbit{s, static_cast<int>(orbits.size())});
  return orbits;
}

std::vector<Solution> enumerate_bounded(const FormEquation& eq, const Int& q_max) {
  validate_equation(eq);
  if (q_max < 0) throw Error(ErrorKind::Context, "q_max must be >= 0");
  std::vector<Solution> out;
  for (Int q = -q_max; q <= q_max; ++q) {
    Int rhs = eq.N + eq.delta * q * q;
    if (rhs < 0 || !divides(eq.gamma, rhs)) continue;
    Int psq = exact_div(rhs, eq.gamma);
    if (!is_perfect_square(psq)) continue;
    Int p = isqrt(psq);
    out.push_back(Solution{p, q});
    if (p != 0) out.push_back(Solution{-p, q});
  }
  std::sort(out.begin(), out.end(), [](const Solution& l, const Solution& r) {
    return std::tie(l.p, l.q) < std::tie(r.p, r.q);
  });
  return out;
}

std::optional<Solution> exists_solution_with_congruences(const FormEquation& eq,
                                                         const CongruenceQuery& query,
                                                         bool require_nonzero_q) {
  validate_equation(eq);
  if (query.modulus < 1)
    throw Error(ErrorKind::Predicate, "congruence modulus must be >= 1");
  if (!query.predicate)
    throw Error(ErrorKind::Predicate, "missing congruence predicate");
  const Int& M = query.modulus;

  auto hits = [&](const Solution& residues) {
    return query.predicate(residues.p, residues.q);
  };
  auto residues_of = [&](const Solution& s) {
    return Solution{mod_floor(s.p, M), mod_floor(s.q, M)};
  };
  auto negate_residues = [&](const Solution& s) {
    return Solution{mod_floor(-s.p, M), mod_floor(-s.q, M)};
  };

  std::vector<PellOrbit> orbits = solve_orbits(eq);
  if (orbits.empty()) return std::nullopt;

  Int D = eq.gamma * eq.delta;
  if (is_perfect_square(D)) {
    // finite solution set: representatives and their negations
    for (const PellOrbit& orbit : orbits) {
      Solution res = residues_of(orbit.rep);
      if (hits(res)) {
        if (!require_nonzero_q || orbit.rep.q != 0) return orbit.rep;
      }
      if (hits(negate_residues(res))) {
        Solution neg{-orbit.rep.p, -orbit.rep.q};
        if (!require_nonzero_q || neg.q != 0) return neg;
      }
    }
    return std::nullopt;
  }

  Automorph aut = *fundamental_automorph(eq.gamma, eq.delta);
  // forward residue cycles: the automorph is invertible mod M, so the
  // residue orbit of each representative is purely periodic
  std::vector<std::vector<Solution>> cycles;
  for (const PellOrbit& orbit : orbits) {
    std::vector<Solution> cycle;
    Solution start = residues_of(orbit.rep);
    Solution cur = start;
    do {
      cycle.push_back(cur);
      cur = residues_of(apply_automorph(eq, aut, cur));
      if (static_cast<long>(cycle.size()) > kMaxCycleStates)
        throw Error(ErrorKind::Predicate, "residue cycle exceeds safety bound");
    } while (!(cur == start));
    cycles.push_back(std::move(cycle));
  }

  auto reconstruct = [&](int orbit_idx, long radius, bool backward, bool negated) {
    Solution s = orbits[orbit_idx].rep;
    for (long k = 0; k < radius; ++k)
      s = backward ? apply_automorph_inverse(eq, aut, s)
                   : apply_automorph(eq, aut, s);
    if (negated) s = Solution{-s.p, -s.q};
    if (require_nonzero_q && s.q == 0) {
      // the same residue state one full period further out has q != 0
      long L = static_cast<long>(cycles[orbit_idx].size());
      for (long k = 0; k < L; ++k)
        s = backward ? apply_automorph_inverse(eq, aut, s)
                     : apply_automorph(eq, aut, s);
    }
    return s;
  };

  long max_radius = 0;
  for (const auto& cycle : cycles)
    max_radius = std::max(max_radius, static_cast<long>(cycle.size()));

  for (long r = 0; r <= max_radius; ++r) {
    for (size_t oi = 0; oi < cycles.size(); ++oi) {
      const auto& cycle = cycles[oi];
      long L = static_cast<long>(cycle.size());
      if (r >= L) continue;
      // forward state T^r; backward state T^(-r) sits at index L - r
      std::vector<std::pair<long, bool>> probes{{r, false}};
      if (r > 0) probes.emplace_back(L - r, true);
      for (const auto& [idx, backward] : probes) {
        const Solution& state = cycle[idx == L ? 0 : idx];
        if (hits(state)) return reconstruct(static_cast<int>(oi), r, backward, false);
        if (hits(negate_residues(state)))
          return reconstruct(static_cast<int>(oi), r, backward, true);
      }
    }
  }
  return std::nullopt;
}

}  // namespace k3sc
