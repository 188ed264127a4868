// Command-line front end: derive invariants, decide the isomorphism
// criterion, check candidate elements, enumerate divisorial conditions,
// and run the cross-validation sweeps.
//
// Exit codes: 0 yes/pass, 1 no/failed clause, 2 invalid input,
// 3 property counterexample.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "k3sc/crossval.hpp"
#include "k3sc/decision.hpp"
#include "k3sc/enumerate.hpp"

using json = nlohmann::json;
using namespace k3sc;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCounterexample = 3;

Int parse_int(const std::string& text) {
  try {
    return Int(text);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::Parse, "not an integer: '" + text + "'");
  }
}

json json_int(const Int& v) {
  if (fits_i64(v)) return json(to_i64(v));
  return json(v.get_str());
}

Int json_to_int(const json& v) {
  if (v.is_number_integer()) return Int(v.get<int64_t>());
  if (v.is_string()) return parse_int(v.get<std::string>());
  throw Error(ErrorKind::Parse, "expected integer or decimal string");
}

unsigned thread_count() {
  if (const char* env = std::getenv("K3SC_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Ordered parallel map: results come back in input order regardless of
// scheduling, keeping batch output deterministic.
template <typename Fn>
std::vector<std::string> parallel_map(const std::vector<std::string>& items, Fn fn) {
  size_t n = items.size();
  unsigned threads = std::min<size_t>(thread_count(), n == 0 ? 1 : n);
  std::vector<std::string> out(n);
  if (threads <= 1) {
    for (size_t i = 0; i < n; ++i) out[i] = fn(items[i]);
    return out;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
      out[i] = fn(items[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;
  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw Error(ErrorKind::Parse, "cannot open output file " + path);
    os = &file;
  }
  std::ostream& stream() { return *os; }
};

void print_report(std::ostream& os, const ConditionReport& rpt) {
  for (const Clause& cl : rpt.clauses)
    os << "  [" << (cl.passed ? "pass" : "FAIL") << "] " << cl.id << "  "
       << cl.desc << "\n";
  if (rpt.beta) os << "  beta " << (*rpt.beta > 0 ? "+1" : "-1") << "\n";
}

json report_json(const ConditionReport& rpt) {
  json arr = json::array();
  for (const Clause& cl : rpt.clauses)
    arr.push_back({{"id", cl.id}, {"passed", cl.passed}});
  json out{{"passed", rpt.passed}, {"clauses", arr}};
  if (rpt.beta) out["beta"] = *rpt.beta;
  return out;
}

struct InstanceArgs {
  std::string r, s, d, gamma = "1", delta, mu;
};

Context context_of(const InstanceArgs& a) {
  return make_context(parse_int(a.r), parse_int(a.s), parse_int(a.d),
                      parse_int(a.gamma), parse_int(a.delta), parse_int(a.mu));
}

json decide_json(const Context& ctx, const Rho2Verdict& verdict) {
  json out{{"verdict", verdict.yes ? "YES" : "NO"}};
  if (verdict.yes) {
    out["series"] = series_name(verdict.witness->series);
    out["eps"] = verdict.witness->eps;
    out["p1"] = json_int(verdict.witness->pq.p);
    out["q1"] = json_int(verdict.witness->pq.q);
    out["h1"] = {json_int(verdict.h1->x), json_int(verdict.h1->y)};
    out["nef"] = {json_int(verdict.h_prime->x), json_int(verdict.h_prime->y)};
    out["report"] = report_json(verdict.element_report);
  }
  out["n_x"] = json_int(ctx.split.n_x);
  return out;
}

int run_decide_instance(Output& output, const InstanceArgs& args,
                        const std::string& format, const std::string& oracle_bound) {
  Context ctx = context_of(args);
  Rho2Verdict verdict = decide_rho2(ctx);
  std::ostream& os = output.stream();
  if (format == "jsonl") {
    json out = decide_json(ctx, verdict);
    if (!oracle_bound.empty()) {
      OracleVerdict ov = oracle_decide_bounded(ctx, parse_int(oracle_bound));
      out["oracle"] = ov.found ? "YES" : "NO-within-bound";
      out["agreement"] = ov.found == verdict.yes;
    }
    os << out.dump() << "\n";
  } else {
    os << (verdict.yes ? "YES" : "NO") << "\n";
    if (verdict.yes) {
      os << "series " << series_name(verdict.witness->series) << "  eps "
         << (verdict.witness->eps > 0 ? "+1" : "-1") << "\n";
      os << "p1 " << verdict.witness->pq.p << "  q1 " << verdict.witness->pq.q
         << "\n";
      os << "h1 (" << verdict.h1->x << ", " << verdict.h1->y << ")\n";
      os << "nef (" << verdict.h_prime->x << ", " << verdict.h_prime->y << ")\n";
      print_report(os, verdict.element_report);
    }
    if (!oracle_bound.empty()) {
      OracleVerdict ov = oracle_decide_bounded(ctx, parse_int(oracle_bound));
      os << "oracle " << (ov.found ? "YES" : "NO-within-bound") << "  agreement "
         << (ov.found == verdict.yes ? "yes" : "NO") << "\n";
      if (ov.found)
        os << "oracle witness (" << ov.xy->x << ", " << ov.xy->y << ") series "
           << series_name(*ov.series) << "\n";
    }
  }
  return verdict.yes ? kExitYes : kExitNo;
}

int run_decide_batch(Output& output, const std::string& path,
                     const std::string& oracle_bound) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open batch file " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) lines.push_back(line);
  std::vector<std::string> outputs = parallel_map(lines, [&](const std::string& line) {
    try {
      json record = json::parse(line);
      Context ctx =
          make_context(json_to_int(record.at("r")), json_to_int(record.at("s")),
                       json_to_int(record.at("d")), json_to_int(record.at("gamma")),
                       json_to_int(record.at("delta")), json_to_int(record.at("mu")));
      json out = decide_json(ctx, decide_rho2(ctx));
      if (!oracle_bound.empty()) {
        OracleVerdict ov = oracle_decide_bounded(ctx, parse_int(oracle_bound));
        out["oracle"] = ov.found ? "YES" : "NO-within-bound";
      }
      return out.dump();
    } catch (const std::exception& e) {
      return json{{"error", e.what()}}.dump();
    }
  });
  for (const std::string& line : outputs) output.stream() << line << "\n";
  return kExitYes;
}

json label_json(const DivisorialLabel& label) {
  return json{{"mu", json_int(label.mu_class)},
              {"delta", json_int(label.delta)},
              {"series", series_name(label.series)},
              {"eps", label.eps},
              {"p1", json_int(label.witness.p)},
              {"q1", json_int(label.witness.q)}};
}

void print_labels(Output& output, const std::vector<DivisorialLabel>& labels,
                  const std::string& format) {
  std::ostream& os = output.stream();
  if (format == "jsonl") {
    for (const DivisorialLabel& label : labels) os << label_json(label).dump() << "\n";
    return;
  }
  os << "mu  delta  series  eps  p1  q1\n";
  for (const DivisorialLabel& label : labels)
    os << label.mu_class << "  " << label.delta << "  "
       << series_name(label.series) << "  " << (label.eps > 0 ? "+1" : "-1") << "  "
       << label.witness.p << "  " << label.witness.q << "\n";
}

DivisorialLabel label_of_branch(const Context& ctx, Series series, int eps,
                                const Solution& pq) {
  Int n = ctx.split.n_x;
  Int mu_class = n == 1 ? Int(0) : std::min(ctx.mu, Int(n - ctx.mu));
  Solution w = pq;
  if (mu_class != ctx.mu) w.q = -w.q;
  return DivisorialLabel{mu_class, ctx.delta, series, eps, w};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic for the sheaf-moduli self-correspondence criteria"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write output to a file instead of stdout");

  auto* cmd_inv = app.add_subcommand("invariants", "derive the discrete invariants");
  InstanceArgs inv_args;
  std::string inv_gamma, inv_format = "table";
  cmd_inv->add_option("--r", inv_args.r)->required();
  cmd_inv->add_option("--s", inv_args.s)->required();
  cmd_inv->add_option("--d", inv_args.d)->required();
  cmd_inv->add_option("--gamma", inv_gamma, "also split the given gamma");
  cmd_inv->add_option("--format", inv_format)->check(CLI::IsMember({"table", "jsonl"}));

  auto* cmd_decide = app.add_subcommand("decide", "decide the rank-2 criterion");
  InstanceArgs decide_args;
  std::string decide_format = "table", decide_oracle, decide_batch;
  cmd_decide->add_option("--batch", decide_batch, "JSONL file of instances");
  cmd_decide->add_option("--r", decide_args.r);
  cmd_decide->add_option("--s", decide_args.s);
  cmd_decide->add_option("--d", decide_args.d);
  cmd_decide->add_option("--gamma", decide_args.gamma);
  cmd_decide->add_option("--delta", decide_args.delta);
  cmd_decide->add_option("--mu", decide_args.mu);
  cmd_decide->add_option("--oracle-bound", decide_oracle,
                         "also run the bounded brute-force check");
  cmd_decide->add_option("--format", decide_format)
      ->check(CLI::IsMember({"table", "jsonl"}));

  auto* cmd_enum = app.add_subcommand("enumerate", "list divisorial conditions");
  InstanceArgs enum_args;
  std::string enum_mu, enum_series, enum_eps, enum_format = "table", enum_max;
  cmd_enum->add_option("--r", enum_args.r)->required();
  cmd_enum->add_option("--s", enum_args.s)->required();
  cmd_enum->add_option("--d", enum_args.d)->required();
  cmd_enum->add_option("--gamma", enum_args.gamma)->required();
  cmd_enum->add_option("--delta-max", enum_max)->required();
  cmd_enum->add_option("--mu", enum_mu, "restrict to one mu class");
  cmd_enum->add_option("--series", enum_series)->check(CLI::IsMember({"A", "B"}));
  cmd_enum->add_option("--eps", enum_eps)->check(CLI::IsMember({"+1", "-1", "1"}));
  cmd_enum->add_option("--format", enum_format)
      ->check(CLI::IsMember({"table", "jsonl"}));

  auto* cmd_check = app.add_subcommand("check-element", "check one lattice element");
  InstanceArgs check_args;
  std::string check_x, check_y, check_series, check_eps, check_format = "table";
  cmd_check->add_option("--r", check_args.r)->required();
  cmd_check->add_option("--s", check_args.s)->required();
  cmd_check->add_option("--d", check_args.d)->required();
  cmd_check->add_option("--gamma", check_args.gamma)->required();
  cmd_check->add_option("--delta", check_args.delta)->required();
  cmd_check->add_option("--mu", check_args.mu)->required();
  cmd_check->add_option("--x", check_x)->required();
  cmd_check->add_option("--y", check_y)->required();
  cmd_check->add_option("--series", check_series)
      ->required()
      ->check(CLI::IsMember({"A", "B"}));
  cmd_check->add_option("--eps", check_eps)
      ->required()
      ->check(CLI::IsMember({"+1", "-1", "1"}));
  cmd_check->add_option("--format", check_format)
      ->check(CLI::IsMember({"table", "jsonl"}));

  auto* cmd_family =
      app.add_subcommand("family", "extend one divisorial condition to a family");
  InstanceArgs family_args;
  std::string family_series, family_eps, family_format = "table";
  int family_count = 5;
  cmd_family->add_option("--r", family_args.r)->required();
  cmd_family->add_option("--s", family_args.s)->required();
  cmd_family->add_option("--d", family_args.d)->required();
  cmd_family->add_option("--gamma", family_args.gamma)->required();
  cmd_family->add_option("--delta", family_args.delta)->required();
  cmd_family->add_option("--mu", family_args.mu)->required();
  cmd_family->add_option("--series", family_series)
      ->required()
      ->check(CLI::IsMember({"A", "B"}));
  cmd_family->add_option("--eps", family_eps)
      ->required()
      ->check(CLI::IsMember({"+1", "-1", "1"}));
  cmd_family->add_option("--count", family_count);
  cmd_family->add_option("--format", family_format)
      ->check(CLI::IsMember({"table", "jsonl"}));

  auto* cmd_nonempty = app.add_subcommand(
      "nonempty", "search gamma = 1 divisorial conditions for one Mukai type");
  InstanceArgs ne_args;
  std::string ne_max;
  cmd_nonempty->add_option("--r", ne_args.r)->required();
  cmd_nonempty->add_option("--s", ne_args.s)->required();
  cmd_nonempty->add_option("--d", ne_args.d)->required();
  cmd_nonempty->add_option("--delta-max", ne_max)->required();

  auto* cmd_cv = app.add_subcommand("crossval", "run a cross-validation sweep");
  std::string cv_suite, cv_scale = "small";
  uint64_t cv_seed = 1;
  cmd_cv->add_option("--suite", cv_suite)
      ->required()
      ->check(CLI::IsMember({"bijection", "reduction", "specialization", "pell"}));
  cmd_cv->add_option("--seed", cv_seed);
  cmd_cv->add_option("--scale", cv_scale)->check(CLI::IsMember({"small", "full"}));

  CLI11_PARSE(app, argc, argv);

  Output output;
  try {
    output.open(out_path);

    if (cmd_inv->parsed()) {
      MukaiInvariants inv = derive_invariants(MukaiInput{
          parse_int(inv_args.r), parse_int(inv_args.s), parse_int(inv_args.d)});
      std::ostream& os = output.stream();
      if (inv_format == "jsonl") {
        json out{{"r", json_int(inv.r)},     {"s", json_int(inv.s)},
                 {"d", json_int(inv.d)},     {"c", json_int(inv.c)},
                 {"a", json_int(inv.a)},     {"b", json_int(inv.b)},
                 {"d_a", json_int(inv.d_a)}, {"d_b", json_int(inv.d_b)},
                 {"a1", json_int(inv.a1)},   {"b1", json_int(inv.b1)},
                 {"m_ab", json_int(inv.m_ab)}, {"m_mod", json_int(inv.two_ab())}};
        if (!inv_gamma.empty()) {
          Int gamma = parse_int(inv_gamma);
          GammaSplit split = split_gamma(inv, gamma);
          out["gamma"] = json_int(gamma);
          out["gamma_a"] = json_int(split.gamma_a);
          out["gamma_b"] = json_int(split.gamma_b);
          out["gamma2"] = json_int(split.gamma2);
          out["n_x"] = json_int(split.n_x);
          out["n_y"] = json_int(split.n_y);
          out["n_v"] = json_int(n_of_v(inv, inv.d, gamma));
        }
        os << out.dump() << "\n";
      } else {
        os << "c " << inv.c << "\na " << inv.a << "\nb " << inv.b << "\nd_a "
           << inv.d_a << "\nd_b " << inv.d_b << "\na1 " << inv.a1 << "\nb1 "
           << inv.b1 << "\nm(a,b) " << inv.m_ab << " mod " << inv.two_ab() << "\n";
        if (!inv_gamma.empty()) {
          Int gamma = parse_int(inv_gamma);
          GammaSplit split = split_gamma(inv, gamma);
          Residue m = m_abd_gamma(inv, inv.d, gamma);
          os << "gamma " << gamma << "\ngamma_a " << split.gamma_a << "\ngamma_b "
             << split.gamma_b << "\ngamma2 " << split.gamma2 << "\na2 " << split.a2
             << "\nb2 " << split.b2 << "\ne2 " << split.e2 << "\nn_x " << split.n_x
             << "\nn_y " << split.n_y << "\nn(v) " << n_of_v(inv, inv.d, gamma)
             << "\nm(a,b,d,gamma) " << m.value << " mod " << m.modulus << "\n";
        }
      }
      return kExitYes;
    }

    if (cmd_decide->parsed()) {
      if (!decide_batch.empty())
        return run_decide_batch(output, decide_batch, decide_oracle);
      if (decide_args.r.empty() || decide_args.s.empty() || decide_args.d.empty() ||
          decide_args.delta.empty() || decide_args.mu.empty())
        throw Error(ErrorKind::Parse,
                    "--r --s --d --gamma --delta --mu are required without --batch");
      return run_decide_instance(output, decide_args, decide_format, decide_oracle);
    }

    if (cmd_enum->parsed()) {
      Int r = parse_int(enum_args.r), s = parse_int(enum_args.s);
      Int d = parse_int(enum_args.d), gamma = parse_int(enum_args.gamma);
      Int dmax = parse_int(enum_max);
      std::vector<Series> series_list{Series::A, Series::B};
      if (enum_series == "A") series_list = {Series::A};
      if (enum_series == "B") series_list = {Series::B};
      std::vector<int> eps_list{1, -1};
      if (enum_eps == "+1" || enum_eps == "1") eps_list = {1};
      if (enum_eps == "-1") eps_list = {-1};

      std::vector<DivisorialLabel> labels;
      if (enum_mu.empty() && enum_series.empty() && enum_eps.empty()) {
        labels = delta_union(r, s, d, gamma, dmax);
      } else if (!enum_mu.empty()) {
        Int mu = parse_int(enum_mu);
        for (Series sr : series_list)
          for (int e : eps_list) {
            auto part = delta_set(r, s, d, gamma, mu, sr, e, dmax);
            labels.insert(labels.end(), part.begin(), part.end());
          }
      } else {
        for (const DivisorialLabel& l : delta_union(r, s, d, gamma, dmax))
          for (Series sr : series_list)
            for (int e : eps_list)
              if (l.series == sr && l.eps == e) labels.push_back(l);
      }
      print_labels(output, labels, enum_format);
      return kExitYes;
    }

    if (cmd_check->parsed()) {
      Context ctx = context_of(check_args);
      LatticeElement h1{parse_int(check_x), parse_int(check_y)};
      SeriesChoice choice{check_series == "A" ? Series::A : Series::B,
                          check_eps == "-1" ? -1 : 1};
      if (!is_member(ctx.lattice_x(), h1))
        throw Error(ErrorKind::NotInLattice, "(" + check_x + "," + check_y +
                                                 ") is not a lattice member");
      ConditionReport rpt = check_element(ctx, choice, h1);
      std::ostream& os = output.stream();
      if (check_format == "jsonl") {
        json out{{"passed", rpt.passed},
                 {"h1", {json_int(h1.x), json_int(h1.y)}},
                 {"report", report_json(rpt)}};
        if (rpt.passed) {
          LatticeElement nef = nef_image(ctx, choice, h1);
          out["nef"] = {json_int(nef.x), json_int(nef.y)};
        }
        os << out.dump() << "\n";
      } else {
        os << (rpt.passed ? "PASS" : "FAIL") << "\n";
        os << "h1^2 " << norm(ctx.lattice_x(), h1) << "\n";
        try {
          PqPair pq = element_to_pq(ctx, choice.series, h1);
          os << "p1 " << pq.p1 << "  q1 " << pq.q1 << "\n";
        } catch (const Error& e) {
          os << "p1,q1 underivable: " << e.what() << "\n";
        }
        print_report(os, rpt);
        if (rpt.passed) {
          LatticeElement nef = nef_image(ctx, choice, h1);
          os << "nef (" << nef.x << ", " << nef.y << ")\n";
        }
      }
      return rpt.passed ? kExitYes : kExitNo;
    }

    if (cmd_family->parsed()) {
      Context ctx = context_of(family_args);
      Series series = family_series == "A" ? Series::A : Series::B;
      int eps = family_eps == "-1" ? -1 : 1;
      std::optional<Solution> pq = decide_branch(ctx, series, eps);
      if (!pq) {
        output.stream() << "branch has no member at this delta\n";
        return kExitNo;
      }
      Int r = parse_int(family_args.r), s = parse_int(family_args.s);
      Int d = parse_int(family_args.d), gamma = parse_int(family_args.gamma);
      DivisorialLabel label = label_of_branch(ctx, series, eps, *pq);
      if (label.witness.q == 0) label = rewitness(r, s, d, gamma, label);
      auto family = generate_family(r, s, d, gamma, label, family_count);
      family.insert(family.begin(), label);
      print_labels(output, family, family_format);
      return kExitYes;
    }

    if (cmd_nonempty->parsed()) {
      NonEmptinessReport report =
          gamma1_nonempty(parse_int(ne_args.r), parse_int(ne_args.s),
                          parse_int(ne_args.d), parse_int(ne_max));
      std::ostream& os = output.stream();
      if (!report.found) {
        os << "inconclusive: no member with delta <= " << report.delta_max
           << " (not a refutation)\n";
        return kExitNo;
      }
      os << "member found:\n";
      print_labels(output, {*report.first}, "table");
      os << "family:\n";
      print_labels(output, report.family, "table");
      return kExitYes;
    }

    if (cmd_cv->parsed()) {
      bool full = cv_scale == "full";
      SweepResult result;
      if (cv_suite == "bijection") result = sweep_bijection(cv_seed, full);
      if (cv_suite == "reduction") result = sweep_reduction(cv_seed, full);
      if (cv_suite == "specialization") result = sweep_specialization(cv_seed, full);
      if (cv_suite == "pell") result = sweep_pell(cv_seed, full);
      std::ostream& os = output.stream();
      os << result.suite << " checked " << result.checked << "\n";
      if (!result.ok) {
        os << "counterexample: " << result.counterexample << "\n";
        return kExitCounterexample;
      }
      os << "ok\n";
      return kExitYes;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
