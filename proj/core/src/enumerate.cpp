#include "k3sc/enumerate.hpp"

#include <algorithm>

namespace k3sc {
namespace {

// Context data that does not depend on delta.
struct Shape {
  MukaiInvariants inv;
  GammaSplit split;
};

Shape shape_of(const Int& r, const Int& s, const Int& d, const Int& gamma) {
  Shape sh;
  sh.inv = derive_invariants(MukaiInput{r, s, d});
  sh.split = split_gamma(sh.inv, gamma);
  Int g = gcd(sh.inv.c, d * gamma);
  if (g != 1)
    throw Error(ErrorKind::Context, "gcd(c, d*gamma) = " + g.get_str() + " != 1");
  return sh;
}

void require_unit(const Shape& sh, const Int& mu) {
  if (gcd(mu, sh.split.n_x) != 1)
    throw Error(ErrorKind::Context,
                "mu is not a unit mod " + sh.split.n_x.get_str());
}

// Smallest admissible delta >= 1 in the class gamma*mu^2 mod 2*n_x.
Int first_delta(const Shape& sh, const Int& mu) {
  Int step = 2 * sh.split.n_x;
  Int d0 = mod_floor(sh.split.gamma * mu * mu, step);
  return d0 == 0 ? step : d0;
}

std::vector<Int> mu_class_reps(const Shape& sh) {
  Int n = sh.split.n_x;
  std::vector<Int> reps;
  if (n == 1) {
    reps.push_back(0);
    return reps;
  }
  for (Int mu = 1; 2 * mu <= n; ++mu)
    if (gcd(mu, n) == 1) reps.push_back(mu);
  return reps;
}

// Clause families are invariant under (mu, q) -> (n - mu, -q); flip the
// witness so it verifies against the canonical mu representative.
DivisorialLabel make_label(const Context& ctx, Series series, int eps,
                           const Solution& pq) {
  Int n = ctx.split.n_x;
  Int mu_class = n == 1 ? Int(0) : std::min(ctx.mu, Int(n - ctx.mu));
  Solution w = pq;
  if (mu_class != ctx.mu) w.q = -w.q;
  return DivisorialLabel{mu_class, ctx.delta, series, eps, w};
}

void verify_member(const Context& ctx, Series series, int eps,
                   const Solution& pq) {
  Int lhs = ctx.split.gamma * pq.p * pq.p - ctx.delta * pq.q * pq.q;
  if (lhs != rhs(ctx, SeriesChoice{series, eps}) ||
      !branch_clauses_pass(ctx, series, pq.p, pq.q))
    throw Error(ErrorKind::Context, "generated member failed re-verification");
}

}  // namespace

std::vector<DivisorialLabel> delta_set(const Int& r, const Int& s, const Int& d,
                                       const Int& gamma, const Int& mu,
                                       Series series, int eps,
                                       const Int& delta_max) {
  if (delta_max < 1) throw Error(ErrorKind::Context, "delta_max must be >= 1");
  Shape sh = shape_of(r, s, d, gamma);
  require_unit(sh, mu);
  std::vector<DivisorialLabel> out;
  Int step = 2 * sh.split.n_x;
  for (Int delta = first_delta(sh, mu); delta <= delta_max; delta += step) {
    Context ctx = make_context(r, s, d, gamma, delta, mu);
    if (std::optional<Solution> pq = decide_branch(ctx, series, eps))
      out.push_back(make_label(ctx, series, eps, *pq));
  }
  return out;
}

std::vector<DivisorialLabel> delta_union(const Int& r, const Int& s, const Int& d,
                                         const Int& gamma, const Int& delta_max) {
  Shape sh = shape_of(r, s, d, gamma);
  std::vector<DivisorialLabel> out;
  for (const Int& mu : mu_class_reps(sh))
    for (Series series : {Series::A, Series::B})
      for (int eps : {1, -1}) {
        auto part = delta_set(r, s, d, gamma, mu, series, eps, delta_max);
        out.insert(out.end(), part.begin(), part.end());
      }
  std::sort(out.begin(), out.end(),
            [](const DivisorialLabel& l, const DivisorialLabel& rgt) {
              auto key = [](const DivisorialLabel& v) {
                return std::make_tuple(v.delta, v.mu_class,
                                       v.series == Series::A ? 0 : 1,
                                       v.eps > 0 ? 0 : 1);
              };
              return key(l) < key(rgt);
            });
  return out;
}

DivisorialLabel rewitness(const Int& r, const Int& s, const Int& d,
                          const Int& gamma, const DivisorialLabel& label) {
  Context ctx = make_context(r, s, d, gamma, label.delta, label.mu_class);
  std::optional<Solution> pq =
      decide_branch(ctx, label.series, label.eps, /*require_nonzero_q=*/true);
  if (!pq)
    throw Error(ErrorKind::DegenerateWitness,
                "no witness with q1 != 0 exists for this label");
  return make_label(ctx, label.series, label.eps, *pq);
}

std::vector<DivisorialLabel> generate_family(const Int& r, const Int& s,
                                             const Int& d, const Int& gamma,
                                             const DivisorialLabel& label,
                                             int count) {
  Context ctx = make_context(r, s, d, gamma, label.delta, label.mu_class);
  verify_member(ctx, label.series, label.eps, label.witness);
  if (label.witness.q == 0)
    throw Error(ErrorKind::DegenerateWitness,
                "family generation needs a witness with q1 != 0");
  std::vector<DivisorialLabel> out;
  if (count <= 0) return out;
  const Int& p0 = label.witness.p;
  const Int& q0 = label.witness.q;
  Int cc = ctx.inv.c * ctx.inv.c;
  Int step = 8 * ctx.inv.a1 * ctx.inv.b1 * cc * q0 * q0;
  Int dir = p0 < 0 ? -1 : 1;
  Int series_rhs = rhs(ctx, SeriesChoice{label.series, label.eps});
  for (Int k = 1; static_cast<int>(out.size()) < count; ++k) {
    Int p = p0 + dir * k * step;
    Int delta = exact_div(gamma * p * p - series_rhs, q0 * q0);
    Context member_ctx = make_context(r, s, d, gamma, delta, label.mu_class);
    Solution w{p, q0};
    verify_member(member_ctx, label.series, label.eps, w);
    out.push_back(make_label(member_ctx, label.series, label.eps, w));
  }
  return out;
}

NonEmptinessReport gamma1_nonempty(const Int& r, const Int& s, const Int& d,
                                   const Int& delta_max) {
  NonEmptinessReport report;
  report.delta_max = delta_max;
  Shape sh = shape_of(r, s, d, 1);
  Int step = 2 * sh.split.n_x;
  std::vector<Int> mus = mu_class_reps(sh);
  for (Int base = 0; base <= delta_max; base += step) {
    for (const Int& mu : mus) {
      Int delta = first_delta(sh, mu) + base;
      if (delta > delta_max) continue;
      Context ctx = make_context(r, s, d, 1, delta, mu);
      for (Series series : {Series::A, Series::B})
        for (int eps : {1, -1}) {
          std::optional<Solution> pq = decide_branch(ctx, series, eps);
          if (!pq) continue;
          DivisorialLabel label = make_label(ctx, series, eps, *pq);
          if (!report.found) {
            report.found = true;
            report.first = label;
          }
          // a branch whose only witnesses have q1 = 0 cannot seed the
          // translation family; keep scanning for a generator
          try {
            if (label.witness.q == 0) label = rewitness(r, s, d, 1, label);
            report.family = generate_family(r, s, d, 1, label, 5);
            return report;
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateWitness) throw;
          }
        }
    }
  }
  return report;
}

}  // namespace k3sc
