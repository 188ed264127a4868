#include "k3sc/crossval.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "k3sc/decision.hpp"
#include "k3sc/pell.hpp"
#include "k3sc/rng.hpp"

namespace k3sc {
namespace {

std::string params_str(const ContextParams& cp) {
  std::ostringstream os;
  os << "r=" << cp.r << " s=" << cp.s << " d=" << cp.d << " gamma=" << cp.gamma
     << " delta=" << cp.delta << " mu=" << cp.mu;
  return os.str();
}

std::vector<ContextParams> subsample(std::vector<ContextParams> all, Rng& rng,
                                     size_t keep) {
  if (all.size() <= keep) return all;
  std::vector<ContextParams> out;
  out.reserve(keep);
  for (size_t i = 0; i < keep; ++i)
    out.push_back(all[rng.below(all.size())]);
  return out;
}

}  // namespace

std::vector<ContextParams> standard_context_family(long max_inv,
                                                   const std::vector<long>& gammas,
                                                   long delta_max) {
  std::vector<ContextParams> out;
  for (long a1 = 1; a1 <= max_inv; ++a1)
    for (long b1 = 1; b1 <= max_inv; ++b1) {
      if (gcd(a1, b1) != 1) continue;
      for (long c = 1; c <= max_inv; ++c)
        for (long gamma : gammas) {
          if (!divides(gamma, Int(2 * a1 * b1)) || gcd(gamma, c) != 1) continue;
          Int nx = exact_div(Int(2 * a1 * b1 * c * c), Int(gamma));
          std::vector<Int> mus;
          if (nx == 1)
            mus.push_back(0);
          else
            for (Int mu = 1; mu < nx; ++mu)
              if (gcd(mu, nx) == 1) mus.push_back(mu);
          for (const Int& mu : mus) {
            Int step = 2 * nx;
            Int d0 = mod_floor(gamma * mu * mu, step);
            if (d0 == 0) d0 = step;
            for (Int delta = d0; delta <= delta_max; delta += step)
              out.push_back(ContextParams{a1 * c, b1 * c, 1, gamma, delta, mu});
          }
        }
    }
  return out;
}

std::vector<Int> squarefree_divisors_signed(const Int& n) {
  std::vector<Int> primes;
  for (const auto& [p, e] : factorize(n).factors) primes.push_back(p);
  std::vector<Int> divs{1};
  for (const Int& p : primes) {
    size_t sz = divs.size();
    for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * p);
  }
  std::sort(divs.begin(), divs.end());
  std::vector<Int> out;
  for (const Int& d : divs) {
    out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

SweepResult sweep_bijection(uint64_t seed, bool full) {
  SweepResult result{"bijection", 0, true, ""};
  Rng rng(seed);
  long delta_max = full ? 400 : 120;
  Int y_max = full ? 10000 : 500;
  auto family = standard_context_family(full ? 3 : 2, {1, 2}, delta_max);
  if (!full) family = subsample(std::move(family), rng, 160);

  for (const ContextParams& cp : family) {
    Context ctx = make_context(cp.r, cp.s, cp.d, cp.gamma, cp.delta, cp.mu);
    Int a1b1 = ctx.inv.a1 * ctx.inv.b1;
    Int cc = ctx.inv.c * ctx.inv.c;
    Int rhs28 = exact_div(4 * a1b1 * a1b1 * cc, ctx.split.gamma);
    Int lead = exact_div(2 * a1b1 * ctx.inv.c, ctx.split.gamma);

    std::set<std::pair<Int, Int>> lhs_set;
    for (Int y = 0; y <= y_max; ++y) {
      Int num = rhs28 + ctx.delta * y * y;
      if (!divides(ctx.split.gamma, num)) continue;
      Int xsq = exact_div(num, ctx.split.gamma);
      if (!is_perfect_square(xsq)) continue;
      Int x = isqrt(xsq);
      if (!congruent(x, lead, ctx.delta) && !congruent(x, -lead, ctx.delta))
        continue;
      lhs_set.insert({x, y});
      if (y != 0) lhs_set.insert({x, -y});
    }

    std::set<std::pair<Int, Int>> rhs_set;
    for (const Int& alpha : squarefree_divisors_signed(2 * a1b1 * ctx.inv.c)) {
      Int base = exact_div(4 * a1b1 * ctx.inv.c, alpha);
      Int D = ctx.split.gamma * ctx.delta;
      Int q_cap = std::max(isqrt(8 * a1b1 * ctx.inv.c), isqrt(2 * y_max)) + 2;
      for (Int q = 0; q <= q_cap; ++q) {
        Int psq = base + D * q * q;
        if (psq < 0 || !is_perfect_square(psq)) continue;
        Int p = isqrt(psq);
        std::vector<Int> ps{p};
        if (p != 0) ps.push_back(-p);
        for (const Int& pv : ps) {
          LatticeElement xy = associated_xy(ctx, alpha, pv, q);
          if (abs(xy.y) <= y_max) rhs_set.insert({xy.x, xy.y});
        }
      }
    }

    ++result.checked;
    if (lhs_set != rhs_set) {
      result.ok = false;
      std::ostringstream os;
      os << "bijection mismatch at " << params_str(cp) << ": |direct|=" << lhs_set.size()
         << " |associated|=" << rhs_set.size();
      result.counterexample = os.str();
      return result;
    }
  }
  return result;
}

SweepResult sweep_reduction(uint64_t seed, bool full) {
  SweepResult result{"reduction", 0, true, ""};
  Rng rng(seed);
  auto family = standard_context_family(full ? 3 : 2, {1, 2}, full ? 400 : 120);
  if (!full) family = subsample(std::move(family), rng, 120);
  Int q_max = full ? 200 : 60;

  for (const ContextParams& cp : family) {
    Context ctx = make_context(cp.r, cp.s, cp.d, cp.gamma, cp.delta, cp.mu);
    Int a1b1c = ctx.inv.a1 * ctx.inv.b1 * ctx.inv.c;
    for (Series series : {Series::A, Series::B}) {
      Int B1 = series == Series::A ? ctx.inv.b1 : ctx.inv.a1;
      Int Ga = series == Series::A ? ctx.split.gamma_a : ctx.split.gamma_b;
      Int Gb = series == Series::A ? ctx.split.gamma_b : ctx.split.gamma_a;
      SquareFreeDecomposition sf = squarefree_decompose(B1);
      for (const Int& alpha : squarefree_divisors_signed(2 * a1b1c)) {
        Int base = exact_div(4 * a1b1c, alpha);
        for (Int q = 0; q <= q_max; ++q) {
          Int psq = base + ctx.split.gamma * ctx.delta * q * q;
          if (psq < 0 || !is_perfect_square(psq)) continue;
          Int p0 = isqrt(psq);
          std::vector<Int> ps{p0};
          if (p0 != 0) ps.push_back(-p0);
          for (const Int& p : ps) {
            bool intermediate = check_Gprime(ctx, alpha, p, q).passed &&
                                (series == Series::A
                                     ? check_Aprime(ctx, alpha, p, q)
                                     : check_Bprime(ctx, alpha, p, q))
                                    .passed;
            LatticeElement xy = associated_xy(ctx, alpha, p, q);
            bool element = check_thm313(ctx, series, xy.x, xy.y).passed;

            bool shape_ok = abs(alpha) == sf.squarefree;
            bool reduced = false;
            if (shape_ok) {
              Int root = sf.root;
              Int denom_p = ctx.split.gamma2 * Ga * root;
              if (divides(root, q * Gb) && divides(denom_p, p)) {
                Int p1 = exact_div(p, denom_p);
                Int q1 = exact_div(q * Gb, root);
                int eps = alpha > 0 ? 1 : -1;
                Int eq = ctx.split.gamma * p1 * p1 - ctx.delta * q1 * q1;
                reduced = eq == rhs(ctx, SeriesChoice{series, eps}) &&
                          branch_clauses_pass(ctx, series, p1, q1);
                // the two associated-solution routes must land on the
                // same sign-normalized pair
                if (eq == rhs(ctx, SeriesChoice{series, eps})) {
                  LatticeElement via_pq =
                      associated_xy_from_pq(ctx, SeriesChoice{series, eps}, p1, q1);
                  if (!(via_pq == xy)) {
                    result.ok = false;
                    std::ostringstream os;
                    os << "associated-solution routes disagree at "
                       << params_str(cp) << " series=" << series_name(series)
                       << " alpha=" << alpha << " p=" << p << " q=" << q;
                    result.counterexample = os.str();
                    return result;
                  }
                }
              }
            }

            ++result.checked;
            bool lemma_ok = !intermediate || shape_ok;
            if (intermediate != element || intermediate != reduced || !lemma_ok) {
              result.ok = false;
              std::ostringstream os;
              os << (lemma_ok ? "chain mismatch" : "square-shape lemma violation")
                 << " at " << params_str(cp) << " series=" << series_name(series)
                 << " alpha=" << alpha << " p=" << p << " q=" << q
                 << ": intermediate=" << intermediate << " element=" << element
                 << " reduced=" << reduced << " shape=" << shape_ok;
              result.counterexample = os.str();
              return result;
            }
          }
        }
      }
    }
  }
  return result;
}

SweepResult sweep_specialization(uint64_t seed, bool full) {
  SweepResult result{"specialization", 0, true, ""};
  Rng rng(seed);
  auto family = standard_context_family(full ? 3 : 2, {1, 2}, full ? 400 : 120);
  if (!full) family = subsample(std::move(family), rng, 160);
  Int y_max = full ? 200 : 80;

  for (const ContextParams& cp : family) {
    Context ctx = make_context(cp.r, cp.s, cp.d, cp.gamma, cp.delta, cp.mu);
    PolarizedLattice2 lat = ctx.lattice_x();
    for (Series series : {Series::A, Series::B})
      for (int eps : {1, -1}) {
        SeriesChoice choice{series, eps};
        Int B1 = series == Series::A ? ctx.inv.b1 : ctx.inv.a1;
        Int target = eps * 2 * B1 * ctx.inv.c * ctx.split.n_x;
        for (Int y = 0; y <= y_max; ++y) {
          Int num = target + ctx.delta * y * y;
          if (num < 0 || !divides(ctx.split.gamma, num)) continue;
          Int xsq = exact_div(num, ctx.split.gamma);
          if (!is_perfect_square(xsq)) continue;
          Int x = isqrt(xsq);
          std::vector<LatticeElement> cands{{x, y}};
          if (y != 0) cands.push_back({x, -y});
          for (const LatticeElement& h1 : cands) {
            if (!is_member(lat, h1)) continue;
            bool general = check_element(ctx, choice, h1).passed;
            bool special = (ctx.split.gamma == 1 ? check_gamma1(ctx, choice, h1)
                                                 : check_gamma2(ctx, choice, h1))
                               .passed;
            if (general) {
              // accepted elements must always produce a valid nef image
              LatticeElement img = nef_image(ctx, choice, h1);
              if (norm(lat, img) != 2 * ctx.inv.a1 * ctx.inv.b1 ||
                  gamma_of(lat, img) != ctx.split.gamma ||
                  !is_primitive(lat, img)) {
                result.ok = false;
                result.counterexample =
                    "nef image contract failed at " + params_str(cp);
                return result;
              }
            }
            ++result.checked;
            if (general != special) {
              result.ok = false;
              std::ostringstream os;
              os << "specialization mismatch at " << params_str(cp)
                 << " series=" << series_name(series) << " eps=" << eps << " h1=("
                 << h1.x << "," << h1.y << "): general=" << general
                 << " special=" << special;
              result.counterexample = os.str();
              return result;
            }
          }
        }
      }
  }
  return result;
}

SweepResult sweep_pell(uint64_t seed, bool full) {
  SweepResult result{"pell", 0, true, ""};
  Rng rng(seed);
  int nonsquare_count = full ? 200 : 40;
  int square_count = full ? 50 : 10;
  Int bound = full ? 10000 : 1000;

  auto check_equation = [&](const FormEquation& eq) -> bool {
    std::vector<Solution> brute = enumerate_bounded(eq, bound);
    std::set<std::pair<Int, Int>> brute_set;
    for (const Solution& s : brute) brute_set.insert({s.p, s.q});

    std::set<std::pair<Int, Int>> closure;
    std::vector<PellOrbit> orbits = solve_orbits(eq);
    std::optional<Automorph> aut = fundamental_automorph(eq.gamma, eq.delta);
    for (const PellOrbit& orbit : orbits) {
      if (!aut) {
        if (abs(orbit.rep.q) <= bound) {
          closure.insert({orbit.rep.p, orbit.rep.q});
          closure.insert({-orbit.rep.p, -orbit.rep.q});
        }
        continue;
      }
      for (int dir : {1, -1}) {
        Solution s = orbit.rep;
        bool first = dir == 1;
        if (!first) {
          s = Solution{aut->t * s.p - eq.delta * aut->u * s.q,
                       -eq.gamma * aut->u * s.p + aut->t * s.q};
        }
        while (abs(s.q) <= bound) {
          closure.insert({s.p, s.q});
          closure.insert({-s.p, -s.q});
          if (dir == 1)
            s = Solution{aut->t * s.p + eq.delta * aut->u * s.q,
                         eq.gamma * aut->u * s.p + aut->t * s.q};
          else
            s = Solution{aut->t * s.p - eq.delta * aut->u * s.q,
                         -eq.gamma * aut->u * s.p + aut->t * s.q};
        }
      }
    }

    ++result.checked;
    if (closure != brute_set) {
      result.ok = false;
      std::ostringstream os;
      os << "pell completeness mismatch at gamma=" << eq.gamma
         << " delta=" << eq.delta << " N=" << eq.N << ": |closure|="
         << closure.size() << " |brute|=" << brute_set.size();
      result.counterexample = os.str();
      return false;
    }
    return true;
  };

  for (int i = 0; i < nonsquare_count; ++i) {
    long gamma = rng.range(1, 10);
    long delta = rng.range(1, 500 / gamma);
    while (is_perfect_square(Int(gamma) * delta)) delta += 1;
    long N = rng.range(1, 200);
    if (rng.below(2) == 0) N = -N;
    if (!check_equation(FormEquation{gamma, delta, N})) return result;
  }
  for (int i = 0; i < square_count; ++i) {
    Int e = rng.range(1, 20);
    std::vector<Int> divs;
    for (Int g = 1; g <= e * e; ++g)
      if (divides(g, e * e)) divs.push_back(g);
    Int gamma = divs[rng.below(divs.size())];
    Int delta = exact_div(e * e, gamma);
    Int N = rng.range(1, 200);
    if (rng.below(2) == 0) N = -N;
    if (!check_equation(FormEquation{gamma, delta, N})) return result;
  }
  return result;
}

}  // namespace k3sc
