#include "k3sc/criteria.hpp"

namespace k3sc {
namespace {

Int pcomp(Int n, const Int& l) {
  Int c = 1;
  while (divides(l, n)) {
    n = exact_div(n, l);
    c *= l;
  }
  return c;
}

// Series-dependent aliases: the b-series is the a-series with the two
// invariant pairs swapped.
struct View {
  Int A1, B1, Ga, Gb;
  const Factorization* A1f;
  const Factorization* B1f;
};

View view_of(const Context& ctx, Series s) {
  if (s == Series::A)
    return View{ctx.inv.a1, ctx.inv.b1, ctx.split.gamma_a, ctx.split.gamma_b,
                &ctx.a1_factors, &ctx.b1_factors};
  return View{ctx.inv.b1, ctx.inv.a1, ctx.split.gamma_b, ctx.split.gamma_a,
              &ctx.b1_factors, &ctx.a1_factors};
}

// The describe callable materializes (id suffix, text) only when a report
// is being built; the residue-cycle predicate path must stay allocation-free.
template <typename Describe>
void emit(ConditionReport* rpt, bool& all, bool ok, const char* id_prefix,
          Describe&& describe) {
  all = all && ok;
  if (rpt) {
    auto [id_rest, desc] = describe();
    rpt->add(std::string(id_prefix) + id_rest, desc, ok);
  }
}

// (AG)/(BG): the membership congruence, its sharpness at primes square in
// the opposite invariant, and coprimality at primes square in the own one.
void eval_general(const Context& ctx, const View& v, const char* pre,
                  const Int& p1, const Int& q1, ConditionReport* rpt, bool& all) {
  Int K = ctx.split.e2 * exact_div(v.A1, v.Ga) * ctx.inv.c;
  emit(rpt, all, congruent(p1 - ctx.mu * q1, 0, K), pre,
       [&] {
         return std::make_pair(std::string(".1"),
                               std::string("p1-mu*q1 = 0 mod " + K.get_str()));
       });
  for (const auto& [l, e] : v.B1f->factors) {
    if (e < 2 || gcd(l, ctx.split.gamma) != 1) continue;
    emit(rpt, all, !congruent(p1 - ctx.mu * q1, 0, K * l), pre,
       [&] {
         return std::make_pair(std::string(".2(l=" + l.get_str() + ")"),
                               std::string("p1-mu*q1 != 0 mod " + Int(K * l).get_str()));
       });
  }
  for (const auto& [l, e] : v.A1f->factors) {
    if (e < 2 || gcd(l, ctx.split.gamma) != 1) continue;
    emit(rpt, all, !divides(l, p1), pre,
       [&] {
         return std::make_pair(std::string(".3(l=" + l.get_str() + ")"),
                               std::string(l.get_str() + " does not divide p1"));
       });
  }
}

// (AS)/(BS): the per-prime singular conditions over gamma.
void eval_singular(const Context& ctx, const View& v, const char* pre,
                   const Int& p1, const Int& q1, ConditionReport* rpt, bool& all) {
  const Int& gamma = ctx.split.gamma;
  const Int& delta = ctx.delta;
  Int dgm = delta - gamma * ctx.mu * ctx.mu;
  for (const auto& [l, e] : ctx.gamma_factors.factors) {
    if (l == 2) continue;
    std::string ls = "(l=" + l.get_str() + ")";
    if (divides(l * l, v.A1)) {
      Int mod = exact_div(pcomp(v.A1, l), pcomp(v.Ga, l)) * l;
      bool ok = !congruent(q1, 0, l) &&
                (!congruent(delta, 0, l) || !congruent(dgm, 0, mod));
      emit(rpt, all, ok, pre,
       [&] { return std::make_pair(std::string(".1" + ls), std::string("q1 != 0 mod l and (delta != 0 mod l or delta-gamma*mu^2 != 0 mod " +
               mod.get_str() + ")")); });
    }
    if (divides(l, v.B1)) {
      Int mod = pcomp(v.Gb, l);
      emit(rpt, all, congruent(q1, 0, mod), pre,
       [&] {
         return std::make_pair(std::string(".2" + ls),
                               std::string("q1 = 0 mod " + mod.get_str()));
       });
    }
    if (divides(l * l, v.B1))
      emit(rpt, all, !congruent(p1, 0, l), pre,
       [&] {
         return std::make_pair(std::string(".3" + ls),
                               std::string("p1 != 0 mod l"));
       });
  }
  if (divides(2, gamma)) {
    bool g2_one = ctx.split.gamma2 == 1;
    if (g2_one && divides(2, v.A1))
      emit(rpt, all, !divides(2, p1), pre,
       [&] {
         return std::make_pair(std::string(".4"),
                               std::string("p1 odd"));
       });
    if (g2_one && divides(4, v.A1))
      emit(rpt, all, !congruent(dgm, 0, 4 * ctx.split.n_x), pre,
       [&] {
         return std::make_pair(std::string(".5"),
                               std::string("delta-gamma*mu^2 != 0 mod " + Int(4 * ctx.split.n_x).get_str()));
       });
    if (g2_one && divides(2, v.B1)) {
      bool ok = !congruent(p1 - ctx.mu * q1, 0, 4) &&
                congruent(q1, 0, pcomp(v.Gb, 2));
      emit(rpt, all, ok, pre,
       [&] {
         return std::make_pair(std::string(".6"),
                               std::string("p1-mu*q1 != 0 mod 4 and q1 = 0 mod " + pcomp(v.Gb, 2).get_str()));
       });
    }
    if (ctx.split.gamma2 == 2 && divides(2, v.B1)) {
      Int mod = exact_div(pcomp(gamma, 2), Int(2));
      bool ok = !divides(2, p1) && congruent(q1, 0, mod);
      emit(rpt, all, ok, pre,
       [&] {
         return std::make_pair(std::string(".7"),
                               std::string("p1 odd and q1 = 0 mod " + mod.get_str()));
       });
    }
  }
}

void require_series_equation(const Context& ctx, const SeriesChoice& choice,
                             const Int& p1, const Int& q1) {
  Int lhs = ctx.split.gamma * p1 * p1 - ctx.delta * q1 * q1;
  Int expect = rhs(ctx, choice);
  if (lhs != expect)
    throw Error(ErrorKind::EquationMismatch,
                "gamma*p1^2-delta*q1^2 = " + lhs.get_str() + ", expected " +
                    expect.get_str());
}

int sign_of(Series s) { return s == Series::A ? 1 : -1; }

LatticeElement normalize_sign(LatticeElement z) {
  if (z.x < 0 || (z.x == 0 && z.y < 0)) return LatticeElement{-z.x, -z.y};
  return z;
}

void require_alpha(const Context& ctx, const Int& alpha) {
  if (alpha == 0) throw Error(ErrorKind::AlphaNotSquareFree, "alpha = 0");
  if (squarefree_decompose(alpha).root != 1)
    throw Error(ErrorKind::AlphaNotSquareFree,
                "alpha = " + alpha.get_str() + " is not square-free");
  if (!divides(alpha, 2 * ctx.inv.a1 * ctx.inv.b1 * ctx.inv.c))
    throw Error(ErrorKind::AlphaNotSquareFree,
                "alpha = " + alpha.get_str() + " does not divide 2*a1*b1*c");
}

void require_alpha_equation(const Context& ctx, const Int& alpha, const Int& p,
                            const Int& q) {
  Int expect = exact_div(4 * ctx.inv.a1 * ctx.inv.b1 * ctx.inv.c, alpha);
  Int lhs = p * p - ctx.split.gamma * ctx.delta * q * q;
  if (lhs != expect)
    throw Error(ErrorKind::EquationMismatch,
                "p^2-gamma*delta*q^2 = " + lhs.get_str() + ", expected " +
                    expect.get_str());
}

// (A')/(B') clause list on (alpha, p, q), in the source order.
void eval_prime_series(const Context& ctx, const View& v, const char* pre,
                       const Int& alpha, const Int& p, const Int& q,
                       ConditionReport* rpt, bool& all) {
  const Int& gamma = ctx.split.gamma;
  const Int& delta = ctx.delta;
  const Int& mu = ctx.mu;
  Int cc = ctx.inv.c * ctx.inv.c;
  Int base = 2 * ctx.inv.a1 * ctx.inv.b1 * cc;
  Int eA = ctx.split.e2 * exact_div(v.A1, v.Ga);  // 2*A1/(gamma2*Ga)
  Int eB = ctx.split.e2 * exact_div(v.B1, v.Gb);
  emit(rpt, all, congruent(alpha * v.Gb * v.Gb * q * q, 0, v.B1), pre,
       [&] {
         return std::make_pair(std::string(".1"),
                               std::string("alpha*(Gb*q)^2 = 0 mod " + v.B1.get_str()));
       });
  emit(rpt, all, congruent(mu * alpha * p * p - alpha * (delta + mu * mu * gamma) * p * q +
                     mu * alpha * gamma * delta * q * q,
                 0, base * eA), pre,
       [&] {
         return std::make_pair(std::string(".2"),
                               std::string("quadratic in (p,q) = 0 mod " + Int(base * eA).get_str()));
       });
  emit(rpt, all, congruent(alpha * (delta - mu * mu * gamma) * p * q, 0, base * eB), pre,
       [&] {
         return std::make_pair(std::string(".3"),
                               std::string("alpha*(delta-mu^2*gamma)*p*q = 0 mod " + Int(base * eB).get_str()));
       });
  emit(rpt, all, congruent(alpha * p * (p - mu * gamma * q), 0, 2 * v.A1 * gamma), pre,
       [&] {
         return std::make_pair(std::string(".4"),
                               std::string("alpha*p*(p-mu*gamma*q) = 0 mod " + Int(2 * v.A1 * gamma).get_str()));
       });
  emit(rpt, all, congruent(alpha * delta * q * q + alpha * mu * p * q, 0, 2 * v.B1), pre,
       [&] {
         return std::make_pair(std::string(".5"),
                               std::string("alpha*delta*q^2+alpha*mu*p*q = 0 mod " + Int(2 * v.B1).get_str()));
       });
  emit(rpt, all, congruent(-alpha * p * q + alpha * mu * gamma * q * q, 0, 2 * v.A1), pre,
       [&] {
         return std::make_pair(std::string(".6"),
                               std::string("-alpha*p*q+alpha*mu*gamma*q^2 = 0 mod " + Int(2 * v.A1).get_str()));
       });
  emit(rpt, all, congruent(alpha * p * q + alpha * mu * gamma * q * q, 0, 2 * v.B1), pre,
       [&] {
         return std::make_pair(std::string(".7"),
                               std::string("alpha*p*q+alpha*mu*gamma*q^2 = 0 mod " + Int(2 * v.B1).get_str()));
       });
  emit(rpt, all, congruent(alpha * (p - mu * gamma * q) * (p - mu * gamma * q), 0,
                 base * 2 * v.A1), pre,
       [&] {
         return std::make_pair(std::string(".8"),
                               std::string("alpha*(p-mu*gamma*q)^2 = 0 mod " + Int(base * 2 * v.A1).get_str()));
       });
  emit(rpt, all, congruent(alpha * gamma * q * q * (delta - gamma * mu * mu), 0,
                 base * 2 * v.B1), pre,
       [&] {
         return std::make_pair(std::string(".9"),
                               std::string("alpha*gamma*q^2*(delta-gamma*mu^2) = 0 mod " + Int(base * 2 * v.B1).get_str()));
       });
}

}  // namespace

Context make_context(const Int& r, const Int& s, const Int& d, const Int& gamma,
                     const Int& delta, const Int& mu) {
  Context ctx;
  ctx.inv = derive_invariants(MukaiInput{r, s, d});
  ctx.split = split_gamma(ctx.inv, gamma);
  Int g = gcd(ctx.inv.c, d * gamma);
  if (g != 1)
    throw Error(ErrorKind::Context, "gcd(c, d*gamma) = " + g.get_str() + " != 1");
  if (delta < 1) throw Error(ErrorKind::Context, "delta must be positive");
  if (gcd(mu, ctx.split.n_x) != 1)
    throw Error(ErrorKind::Context, "mu is not a unit mod " + ctx.split.n_x.get_str());
  ctx.mu = mod_floor(mu, ctx.split.n_x);
  if (!congruent(delta, gamma * ctx.mu * ctx.mu, 2 * ctx.split.n_x))
    throw Error(ErrorKind::Context,
                "delta != gamma*mu^2 mod " + Int(2 * ctx.split.n_x).get_str());
  ctx.delta = delta;
  ctx.a1_factors = factorize(ctx.inv.a1);
  ctx.b1_factors = factorize(ctx.inv.b1);
  ctx.gamma_factors = factorize(gamma);
  validate(ctx.lattice_x());
  return ctx;
}

Int rhs(const Context& ctx, const SeriesChoice& choice) {
  View v = view_of(ctx, choice.series);
  return choice.eps * 2 * ctx.split.e2 * exact_div(v.A1, v.Ga) * v.Gb * ctx.inv.c;
}

ConditionReport check_AG(const Context& ctx, int eps, const Int& p1, const Int& q1) {
  require_series_equation(ctx, SeriesChoice{Series::A, eps}, p1, q1);
  ConditionReport rpt;
  bool all = true;
  eval_general(ctx, view_of(ctx, Series::A), "AG", p1, q1, &rpt, all);
  return rpt;
}

ConditionReport check_BG(const Context& ctx, int eps, const Int& p1, const Int& q1) {
  require_series_equation(ctx, SeriesChoice{Series::B, eps}, p1, q1);
  ConditionReport rpt;
  bool all = true;
  eval_general(ctx, view_of(ctx, Series::B), "BG", p1, q1, &rpt, all);
  return rpt;
}

ConditionReport check_AS(const Context& ctx, int eps, const Int& p1, const Int& q1) {
  require_series_equation(ctx, SeriesChoice{Series::A, eps}, p1, q1);
  ConditionReport rpt;
  bool all = true;
  eval_singular(ctx, view_of(ctx, Series::A), "AS", p1, q1, &rpt, all);
  return rpt;
}

ConditionReport check_BS(const Context& ctx, int eps, const Int& p1, const Int& q1) {
  require_series_equation(ctx, SeriesChoice{Series::B, eps}, p1, q1);
  ConditionReport rpt;
  bool all = true;
  eval_singular(ctx, view_of(ctx, Series::B), "BS", p1, q1, &rpt, all);
  return rpt;
}

bool branch_clauses_pass(const Context& ctx, Series series, const Int& p1,
                         const Int& q1) {
  View v = view_of(ctx, series);
  bool all = true;
  eval_general(ctx, v, "", p1, q1, nullptr, all);
  if (all) eval_singular(ctx, v, "", p1, q1, nullptr, all);
  return all;
}

Int branch_modulus(const Context& ctx, Series series) {
  View v = view_of(ctx, series);
  Int K = ctx.split.e2 * exact_div(v.A1, v.Ga) * ctx.inv.c;
  Int m = lcm(K, 4);
  for (const auto& [l, e] : v.B1f->factors)
    if (e >= 2 && gcd(l, ctx.split.gamma) == 1) m = lcm(m, K * l);
  for (const auto& [l, e] : v.A1f->factors)
    if (e >= 2 && gcd(l, ctx.split.gamma) == 1) m = lcm(m, l);
  return lcm(m, ctx.split.gamma);
}

ConditionReport check_thm313(const Context& ctx, Series series, const Int& x,
                             const Int& y) {
  const Int& gamma = ctx.split.gamma;
  const Int& delta = ctx.delta;
  const Int& mu = ctx.mu;
  const Int& m = ctx.inv.m_ab;
  Int a1b1 = ctx.inv.a1 * ctx.inv.b1;
  Int cc = ctx.inv.c * ctx.inv.c;
  Int expect = exact_div(4 * a1b1 * a1b1 * cc, gamma);
  Int lhs = gamma * x * x - delta * y * y;
  if (lhs != expect)
    throw Error(ErrorKind::EquationMismatch,
                "gamma*x^2-delta*y^2 = " + lhs.get_str() + ", expected " +
                    expect.get_str());
  Int sg = sign_of(series);
  const Int& nx = ctx.split.n_x;
  const Int& ny = ctx.split.n_y;

  ConditionReport rpt;
  bool all = true;
  emit(&rpt, all, congruent(x, mu * y, nx), "T",
       [&] {
         return std::make_pair(std::string(".i.1"),
                               std::string("x = mu*y mod " + nx.get_str()));
       });
  emit(&rpt, all, congruent(mu * gamma * x, delta * y, nx * gamma), "T",
       [&] {
         return std::make_pair(std::string(".i.2"),
                               std::string("mu*gamma*x = delta*y mod " + Int(nx * gamma).get_str()));
       });

  bool dy_div = divides(gamma, delta * y);
  Int dy_over_g = dy_div ? exact_div(delta * y, gamma) : Int(0);
  emit(&rpt, all, dy_div && congruent(sg * m * mu * x + dy_over_g, 0, ny), "T",
       [&] {
         return std::make_pair(std::string(".ii.1"),
                               std::string("s*m*mu*x + delta*y/gamma = 0 mod " + ny.get_str()));
       });
  emit(&rpt, all, congruent(x + sg * m * mu * y, 0, ny), "T",
       [&] {
         return std::make_pair(std::string(".ii.2"),
                               std::string("x + s*m*mu*y = 0 mod " + ny.get_str()));
       });
  emit(&rpt, all, dy_div && congruent(sg * m * mu * x + dy_over_g, mu * (x + sg * m * mu * y),
                           nx * ny), "T",
       [&] {
         return std::make_pair(std::string(".ii.3"),
                               std::string("s*m*mu*x + delta*y/gamma = mu*(x + s*m*mu*y) mod " + Int(nx * ny).get_str()));
       });

  auto beta_systems = [&](int beta) {
    Int two_ab1 = 2 * a1b1;
    Int num_a = m * gamma * x + sg * mu * gamma * y;
    Int num_b = delta * m * y + sg * mu * gamma * x;
    if (!divides(two_ab1, num_a) || !divides(two_ab1, num_b)) return false;
    Int A34 = exact_div(num_a, two_ab1) - beta * ctx.inv.c;
    Int B34 = exact_div(num_b, two_ab1) - beta * mu * ctx.inv.c;
    if (!congruent(A34, 0, gamma)) return false;
    if (!congruent(B34, 0, delta)) return false;
    if (!congruent(delta * A34, mu * gamma * B34, two_ab1 * cc * delta)) return false;
    if (!congruent(ctx.inv.c * delta * y, 0, gamma)) return false;
    if (!congruent(ctx.inv.c * x, sg * beta * nx, delta)) return false;
    if (!congruent(delta * y, mu * (gamma * x - sg * beta * 2 * a1b1 * ctx.inv.c),
                   2 * a1b1 * ctx.inv.c * delta))
      return false;
    return true;
  };
  bool iii = false;
  for (int beta : {1, -1})
    if (beta_systems(beta)) {
      iii = true;
      rpt.beta = beta;
      break;
    }
  emit(&rpt, all, iii, "T",
       [&] {
         return std::make_pair(std::string(".iii"),
                               std::string("paired coset systems hold for some beta"));
       });

  bool iv = divides(nx, x - mu * y) &&
            gcd(gcd(x, y), exact_div(x - mu * y, nx)) == 1;
  emit(&rpt, all, iv, "T",
       [&] {
         return std::make_pair(std::string(".iv"),
                               std::string("gcd(x, y, (x-mu*y)/n) = 1"));
       });

  bool v_ok = divides(nx, mu * gamma * x - delta * y) &&
              gcd(gcd(gamma * x, delta * y),
                  exact_div(mu * gamma * x - delta * y, nx)) == gamma;
  emit(&rpt, all, v_ok, "T",
       [&] {
         return std::make_pair(std::string(".v"),
                               std::string("gcd(gamma*x, delta*y, (mu*gamma*x-delta*y)/n) = gamma"));
       });
  return rpt;
}

ConditionReport check_Gprime(const Context& ctx, const Int& alpha, const Int& p,
                             const Int& q) {
  require_alpha(ctx, alpha);
  require_alpha_equation(ctx, alpha, p, q);
  const Int& gamma = ctx.split.gamma;
  const Int& delta = ctx.delta;
  const Int& mu = ctx.mu;
  Int a1b1 = ctx.inv.a1 * ctx.inv.b1;
  Int cc = ctx.inv.c * ctx.inv.c;
  Int big = 4 * a1b1 * cc;

  ConditionReport rpt;
  bool all = true;
  emit(&rpt, all, congruent(alpha * (p - mu * gamma * q) * (p - mu * gamma * q), 0, big), "G",
       [&] {
         return std::make_pair(std::string(".1"),
                               std::string("alpha*(p-mu*gamma*q)^2 = 0 mod " + big.get_str()));
       });
  emit(&rpt, all, congruent(2 * alpha * p * q * (delta - gamma * mu * mu), 0, big), "G",
       [&] {
         return std::make_pair(std::string(".2"),
                               std::string("2*alpha*p*q*(delta-gamma*mu^2) = 0 mod " + big.get_str()));
       });
  emit(&rpt, all, congruent(alpha * q * (p - mu * gamma * q), 0, 2 * a1b1 * ctx.inv.c), "G",
       [&] {
         return std::make_pair(std::string(".3"),
                               std::string("alpha*q*(p-mu*gamma*q) = 0 mod " + Int(2 * a1b1 * ctx.inv.c).get_str()));
       });

  Int s1 = alpha * p * p + alpha * gamma * delta * q * q;
  auto sq_primes = [&](const Factorization& f, std::vector<Int>& out) {
    for (const auto& [l, e] : f.factors)
      if (e >= 2) out.push_back(l);
  };
  std::vector<Int> ls;
  sq_primes(ctx.a1_factors, ls);
  sq_primes(ctx.b1_factors, ls);
  for (const Int& l : ls) {
    bool sat = congruent(s1, 0, 2 * gamma * l) && congruent(alpha * p * q, 0, l) &&
               congruent(s1, 2 * alpha * gamma * mu * p * q, big * l);
    emit(&rpt, all, !sat, "G",
       [&] {
         return std::make_pair(std::string(".4(l=" + l.get_str() + ")"),
                               std::string("divisibility system over l not satisfied"));
       });
  }
  for (const auto& [l, e] : factorize(ctx.split.n_y).factors) {
    bool sat = congruent(s1, 0, 2 * gamma * l) &&
               congruent(delta * alpha * p * q, 0, gamma * l) &&
               congruent(mu * s1, 2 * alpha * delta * p * q, big * l);
    emit(&rpt, all, !sat, "G",
       [&] {
         return std::make_pair(std::string(".5(l=" + l.get_str() + ")"),
                               std::string("pairing-divisibility system over l not satisfied"));
       });
  }
  return rpt;
}

ConditionReport check_Aprime(const Context& ctx, const Int& alpha, const Int& p,
                             const Int& q) {
  require_alpha(ctx, alpha);
  require_alpha_equation(ctx, alpha, p, q);
  ConditionReport rpt;
  bool all = true;
  eval_prime_series(ctx, view_of(ctx, Series::A), "A", alpha, p, q, &rpt, all);
  return rpt;
}

ConditionReport check_Bprime(const Context& ctx, const Int& alpha, const Int& p,
                             const Int& q) {
  require_alpha(ctx, alpha);
  require_alpha_equation(ctx, alpha, p, q);
  ConditionReport rpt;
  bool all = true;
  eval_prime_series(ctx, view_of(ctx, Series::B), "B", alpha, p, q, &rpt, all);
  return rpt;
}

LatticeElement associated_xy(const Context& ctx, const Int& alpha, const Int& p,
                             const Int& q) {
  require_alpha(ctx, alpha);
  require_alpha_equation(ctx, alpha, p, q);
  Int lead = exact_div(2 * ctx.inv.a1 * ctx.inv.b1 * ctx.inv.c, ctx.split.gamma);
  return normalize_sign(
      LatticeElement{lead + alpha * ctx.delta * q * q, alpha * p * q});
}

LatticeElement associated_xy_from_pq(const Context& ctx, const SeriesChoice& choice,
                                     const Int& p1, const Int& q1) {
  require_series_equation(ctx, choice, p1, q1);
  View v = view_of(ctx, choice.series);
  // reconstruction of (alpha, p, q) must be integral for a valid pair
  SquareFreeDecomposition sf = squarefree_decompose(v.B1);
  if (!divides(v.Gb, sf.root * q1))
    throw Error(ErrorKind::NonIntegral,
                "substitution q = root(B1/alpha)*q1/Gb is fractional");
  Int lead = exact_div(2 * ctx.inv.a1 * ctx.inv.b1 * ctx.inv.c, ctx.split.gamma);
  Int scale = choice.eps * exact_div(v.B1, v.Gb) * ctx.split.gamma2 * v.Ga;
  return normalize_sign(
      LatticeElement{-lead + scale * p1 * p1, scale * p1 * q1});
}

PqPair element_to_pq(const Context& ctx, Series series, const LatticeElement& h1) {
  PolarizedLattice2 lat = ctx.lattice_x();
  if (!is_member(lat, h1))
    throw Error(ErrorKind::NotInLattice, "element is not in the lattice");
  View v = view_of(ctx, series);
  Int t = exact_div(v.B1, v.Gb) * ctx.inv.c;
  if (!divides(t, h1.x))
    throw Error(ErrorKind::Divisibility,
                "P.h1 = " + Int(ctx.split.gamma * h1.x).get_str() +
                    " is not divisible by gamma*(B1/Gb)*c = " +
                    Int(ctx.split.gamma * t).get_str());
  if (!divides(t, h1.y))
    throw Error(ErrorKind::Divisibility,
                "f.h1 = " + Int(-ctx.delta * h1.y).get_str() +
                    " is not divisible by delta*(B1/Gb)*c = " +
                    Int(ctx.delta * t).get_str());
  return PqPair{exact_div(h1.x, t), exact_div(h1.y, t)};
}

ConditionReport check_element(const Context& ctx, const SeriesChoice& choice,
                              const LatticeElement& h1) {
  PolarizedLattice2 lat = ctx.lattice_x();
  if (!is_member(lat, h1))
    throw Error(ErrorKind::NotInLattice, "element is not in the lattice");
  View v = view_of(ctx, choice.series);
  const Int& gamma = ctx.split.gamma;
  Int pair_mod = gamma * exact_div(v.B1, v.Gb) * ctx.inv.c;
  Int with_P = inner_with_P(lat, h1);

  ConditionReport rpt;
  bool all = true;
  emit(&rpt, all, norm(lat, h1) == choice.eps * 2 * v.B1 * ctx.inv.c, "E",
       [&] {
         return std::make_pair(std::string(".sq"),
                               std::string("h1^2 = " + Int(choice.eps * 2 * v.B1 * ctx.inv.c).get_str()));
       });
  emit(&rpt, all, congruent(with_P, 0, pair_mod), "E",
       [&] {
         return std::make_pair(std::string(".pair"),
                               std::string("P.h1 = 0 mod " + pair_mod.get_str()));
       });
  for (const auto& [l, e] : v.A1f->factors) {
    if (e < 2 || gcd(l, gamma) != 1) continue;
    emit(&rpt, all, !congruent(with_P, 0, pair_mod * l), "E",
       [&] {
         return std::make_pair(std::string(".sharp(l=" + l.get_str() + ")"),
                               std::string("P.h1 != 0 mod " + Int(pair_mod * l).get_str()));
       });
  }
  for (const auto& [l, e] : v.B1f->factors) {
    if (e < 2 || gcd(l, gamma) != 1) continue;
    bool in_lattice = divides(l, h1.x) && divides(l, h1.y) &&
                      is_member(lat, LatticeElement{exact_div(h1.x, l),
                                                    exact_div(h1.y, l)});
    emit(&rpt, all, !in_lattice, "E",
       [&] {
         return std::make_pair(std::string(".indiv(l=" + l.get_str() + ")"),
                               std::string("h1/" + l.get_str() + " is not a lattice point"));
       });
  }

  Int t = exact_div(v.B1, v.Gb) * ctx.inv.c;
  bool derivable = divides(t, h1.x) && divides(t, h1.y);
  emit(&rpt, all, derivable, "E",
       [&] {
         return std::make_pair(std::string(".pq"),
                               std::string("(p1, q1) are integral"));
       });
  if (derivable) {
    const char* pre = choice.series == Series::A ? "AS" : "BS";
    eval_singular(ctx, v, pre, exact_div(h1.x, t), exact_div(h1.y, t), &rpt, all);
  }
  return rpt;
}

LatticeElement nef_image(const Context& ctx, const SeriesChoice& choice,
                         const LatticeElement& h1) {
  PolarizedLattice2 lat = ctx.lattice_x();
  if (!is_member(lat, h1))
    throw Error(ErrorKind::NotInLattice, "element is not in the lattice");
  View v = view_of(ctx, choice.series);
  Int den = v.B1 * ctx.inv.c * ctx.inv.c;
  Int with_P = inner_with_P(lat, h1);  // gamma * x
  Int nx_over_c = exact_div(ctx.split.n_x, ctx.inv.c);
  Int numx = choice.eps * with_P * h1.x;
  Int numy = choice.eps * with_P * h1.y;
  if (!divides(den, numx) || !divides(den, numy))
    throw Error(ErrorKind::NonIntegral,
                "nef image is not integral for this element");
  LatticeElement img{-nx_over_c + exact_div(numx, den), exact_div(numy, den)};
  if (!is_member(lat, img))
    throw Error(ErrorKind::NonIntegral, "nef image does not lie in the lattice");
  Int expect_sq = 2 * ctx.inv.a1 * ctx.inv.b1;
  if (norm(lat, img) != expect_sq)
    throw Error(ErrorKind::NonIntegral,
                "nef image has square " + norm(lat, img).get_str() + ", expected " +
                    expect_sq.get_str());
  if (gamma_of(lat, img) != ctx.split.gamma)
    throw Error(ErrorKind::NonIntegral, "nef image has wrong pairing invariant");
  if (!is_primitive(lat, img))
    throw Error(ErrorKind::NonIntegral, "nef image is imprimitive");
  return img;
}

ConditionReport check_gamma1(const Context& ctx, const SeriesChoice& choice,
                             const LatticeElement& h1) {
  if (ctx.split.gamma != 1)
    throw Error(ErrorKind::WrongGamma, "specialized checker requires gamma = 1");
  PolarizedLattice2 lat = ctx.lattice_x();
  if (!is_member(lat, h1))
    throw Error(ErrorKind::NotInLattice, "element is not in the lattice");
  View v = view_of(ctx, choice.series);
  Int with_P = inner_with_P(lat, h1);
  Int pair_mod = v.B1 * ctx.inv.c;

  ConditionReport rpt;
  bool all = true;
  emit(&rpt, all, norm(lat, h1) == choice.eps * 2 * v.B1 * ctx.inv.c, "S1",
       [&] {
         return std::make_pair(std::string(".sq"),
                               std::string("h1^2 = eps*2*B1*c"));
       });
  emit(&rpt, all, congruent(with_P, 0, pair_mod), "S1",
       [&] {
         return std::make_pair(std::string(".pair"),
                               std::string("P.h1 = 0 mod " + pair_mod.get_str()));
       });
  for (const auto& [l, e] : v.A1f->factors)
    if (e >= 2)
      emit(&rpt, all, !congruent(with_P, 0, pair_mod * l), "S1",
       [&] {
         return std::make_pair(std::string(".sharp(l=" + l.get_str() + ")"),
                               std::string("P.h1 != 0 mod B1*c*l"));
       });
  for (const auto& [l, e] : v.B1f->factors)
    if (e >= 2) {
      bool in_lat = divides(l, h1.x) && divides(l, h1.y) &&
                    is_member(lat, LatticeElement{exact_div(h1.x, l),
                                                  exact_div(h1.y, l)});
      emit(&rpt, all, !in_lat, "S1",
       [&] {
         return std::make_pair(std::string(".indiv(l=" + l.get_str() + ")"),
                               std::string("h1/l is not a lattice point"));
       });
    }
  return rpt;
}

ConditionReport check_gamma2(const Context& ctx, const SeriesChoice& choice,
                             const LatticeElement& h1) {
  if (ctx.split.gamma != 2)
    throw Error(ErrorKind::WrongGamma, "specialized checker requires gamma = 2");
  PolarizedLattice2 lat = ctx.lattice_x();
  if (!is_member(lat, h1))
    throw Error(ErrorKind::NotInLattice, "element is not in the lattice");
  const Int& a1 = ctx.inv.a1;
  const Int& b1 = ctx.inv.b1;
  const Int& c = ctx.inv.c;
  Int with_P = inner_with_P(lat, h1);
  bool a1_even = divides(2, a1);
  bool b1_even = divides(2, b1);

  ConditionReport rpt;
  bool all = true;
  auto sq_clause = [&](const Int& B1) {
    emit(&rpt, all, norm(lat, h1) == choice.eps * 2 * B1 * c, "S2",
       [&] {
         return std::make_pair(std::string(".sq"),
                               std::string("h1^2 = eps*2*" + B1.get_str() + "*c"));
       });
  };
  auto pair_clause = [&](const Int& mod) {
    emit(&rpt, all, congruent(with_P, 0, mod), "S2",
       [&] {
         return std::make_pair(std::string(".pair"),
                               std::string("P.h1 = 0 mod " + mod.get_str()));
       });
  };
  auto sharp_clauses = [&](const Factorization& f, bool skip_two, const Int& mod) {
    for (const auto& [l, e] : f.factors) {
      if (e < 2 || (skip_two && l == 2)) continue;
      emit(&rpt, all, !congruent(with_P, 0, mod * l), "S2",
       [&] {
         return std::make_pair(std::string(".sharp(l=" + l.get_str() + ")"),
                               std::string("P.h1 != 0 mod " + Int(mod * l).get_str()));
       });
    }
  };
  auto indiv_clauses = [&](const Factorization& f, bool skip_two) {
    for (const auto& [l, e] : f.factors) {
      if (e < 2 || (skip_two && l == 2)) continue;
      bool in_lat = divides(l, h1.x) && divides(l, h1.y) &&
                    is_member(lat, LatticeElement{exact_div(h1.x, l),
                                                  exact_div(h1.y, l)});
      emit(&rpt, all, !in_lat, "S2",
       [&] {
         return std::make_pair(std::string(".indiv(l=" + l.get_str() + ")"),
                               std::string("h1/l is not a lattice point"));
       });
    }
  };
  auto half_not_in_lattice = [&]() {
    bool in_lat = divides(2, h1.x) && divides(2, h1.y) &&
                  is_member(lat, LatticeElement{exact_div(h1.x, Int(2)),
                                                exact_div(h1.y, Int(2))});
    emit(&rpt, all, !in_lat, "S2",
       [&] {
         return std::make_pair(std::string(".half"),
                               std::string("h1/2 is not a lattice point"));
       });
  };

  if (!a1_even && !b1_even) {
    // gamma2 = 2: no extra singular conditions
    if (choice.series == Series::A) {
      sq_clause(b1);
      pair_clause(2 * b1 * c);
      sharp_clauses(ctx.a1_factors, false, 2 * b1 * c);
      indiv_clauses(ctx.b1_factors, false);
    } else {
      sq_clause(a1);
      pair_clause(2 * a1 * c);
      sharp_clauses(ctx.b1_factors, false, 2 * a1 * c);
      indiv_clauses(ctx.a1_factors, false);
    }
    return rpt;
  }

  Int dgm2 = ctx.delta - 2 * ctx.mu * ctx.mu;
  if (a1_even) {
    // gamma_a = 2, gamma_b = 1, gamma2 = 1
    if (choice.series == Series::A) {
      sq_clause(b1);
      pair_clause(2 * b1 * c);
      sharp_clauses(ctx.a1_factors, true, 2 * b1 * c);
      indiv_clauses(ctx.b1_factors, false);
      emit(&rpt, all, !congruent(with_P, 0, 4 * b1 * c), "S2",
       [&] {
         return std::make_pair(std::string(".sing1"),
                               std::string("P.h1 != 0 mod " + Int(4 * b1 * c).get_str()));
       });
      if (divides(4, a1))
        emit(&rpt, all, !congruent(dgm2, 0, 4 * a1), "S2",
       [&] {
         return std::make_pair(std::string(".sing2"),
                               std::string("delta != 2*mu^2 mod " + Int(4 * a1).get_str()));
       });
    } else {
      sq_clause(a1);
      pair_clause(a1 * c);
      sharp_clauses(ctx.b1_factors, false, a1 * c);
      indiv_clauses(ctx.a1_factors, true);
      emit(&rpt, all, congruent(with_P, 0, 2 * a1 * c), "S2",
       [&] {
         return std::make_pair(std::string(".sing1"),
                               std::string("P.h1 = 0 mod " + Int(2 * a1 * c).get_str()));
       });
      half_not_in_lattice();
    }
    return rpt;
  }

  // b1 even: gamma_a = 1, gamma_b = 2, gamma2 = 1
  if (choice.series == Series::A) {
    sq_clause(b1);
    pair_clause(b1 * c);
    sharp_clauses(ctx.a1_factors, false, b1 * c);
    indiv_clauses(ctx.b1_factors, true);
    emit(&rpt, all, congruent(with_P, 0, 2 * b1 * c), "S2",
       [&] {
         return std::make_pair(std::string(".sing1"),
                               std::string("P.h1 = 0 mod " + Int(2 * b1 * c).get_str()));
       });
    half_not_in_lattice();
  } else {
    sq_clause(a1);
    pair_clause(2 * a1 * c);
    sharp_clauses(ctx.b1_factors, true, 2 * a1 * c);
    indiv_clauses(ctx.a1_factors, false);
    emit(&rpt, all, !congruent(with_P, 0, 4 * a1 * c), "S2",
       [&] {
         return std::make_pair(std::string(".sing1"),
                               std::string("P.h1 != 0 mod " + Int(4 * a1 * c).get_str()));
       });
    if (divides(4, b1))
      emit(&rpt, all, !congruent(dgm2, 0, 4 * b1), "S2",
       [&] {
         return std::make_pair(std::string(".sing2"),
                               std::string("delta != 2*mu^2 mod " + Int(4 * b1).get_str()));
       });
  }
  return rpt;
}

}  // namespace k3sc
