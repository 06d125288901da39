// diocert — proof pipeline for the equations P_k = J_n + J_m and
// R_k = J_n + J_m: exact sequence arithmetic, certified real computation,
// absolute bounds from linear forms in logarithms, continued-fraction
// reductions, exhaustive search, and machine-checkable certificates.
//
// Exit codes: 0 success (and, for `pipeline`, clean reference-table diff);
// 2 pipeline/verify completed but found failing reference rows; 1 usage or
// operational error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diocert/algebraic.hpp"
#include "diocert/contfrac.hpp"
#include "diocert/matveev.hpp"
#include "diocert/reduction.hpp"
#include "diocert/report.hpp"
#include "diocert/sequences.hpp"
#include "diocert/solver.hpp"

namespace {

using namespace diocert;

struct RunConfig {
  long precision_bits = 256;
  long cfrac_precision_bits = 4096;
  long convergent_horizon = 40;
  std::string format = "text";
  std::string problem = "padovan";
};

Problem parse_problem(const std::string& s) {
  if (s == "padovan") return Problem::padovan;
  if (s == "perrin") return Problem::perrin;
  throw CLI::ValidationError("problem must be padovan or perrin");
}

SequenceKind parse_kind(const std::string& s) {
  if (s == "padovan") return SequenceKind::padovan;
  if (s == "perrin") return SequenceKind::perrin;
  if (s == "jacobsthal") return SequenceKind::jacobsthal;
  throw CLI::ValidationError("kind must be padovan, perrin or jacobsthal");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  if (s == "text") return OutputFormat::text;
  throw CLI::ValidationError("format must be text, json or csv");
}

// Descriptor names accepted by `cfrac --tau`.
RealDescriptor parse_descriptor(const std::string& s) {
  if (s == "tau" || s == "log-alpha/log2") return tau_log_alpha_over_log2();
  if (s == "mu-padovan") return mu_padovan();
  if (s == "mu-perrin") return mu_perrin();
  auto starts = [&](const char* p) { return s.rfind(p, 0) == 0; };
  if (starts("mu-padovan-t=")) return mu_padovan_t(std::stol(s.substr(13)));
  if (starts("mu-perrin-t=")) return mu_perrin_t(std::stol(s.substr(12)));
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpq_class q(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    q.canonicalize();
    return rational_descriptor(q);
  }
  throw CLI::ValidationError(
      "descriptor must be tau, mu-padovan[-t=T], mu-perrin[-t=T], or p/q");
}

int cmd_seq(const std::string& kind_s, long max_index, const std::string& fmt) {
  TermTable t = table(parse_kind(kind_s), max_index);
  for (long i = 0; i <= t.max_index(); ++i) {
    if (fmt == "text")
      std::cout << t.term(i).get_str() << "\n";
    else
      std::cout << i << "," << t.term(i).get_str() << "\n";
  }
  return 0;
}

int cmd_ctx(long bits) {
  const AlgebraicContext& ctx = shared_context(bits);
  Ball tau = ctx.log_alpha / ctx.log2;
  auto line = [](const char* name, const Ball& b) {
    std::cout << name << " = " << b.midpoint_string(40) << "  (radius "
              << b.radius_string() << ", certified digits "
              << b.certified_decimal_digits() << ")\n";
  };
  line("alpha", ctx.alpha);
  line("a", ctx.binet_a);
  line("|beta|", ctx.beta_abs);
  line("|b|", ctx.b_abs);
  line("log(alpha)/log(2)", tau);
  return 0;
}

int cmd_cfrac(const std::string& desc, long count, long bits, bool as_json) {
  ContinuedFraction cf(parse_descriptor(desc), bits);
  cf.ensure(count);
  std::vector<Convergent> cs = cf.convergents(
      std::min<long>(count, cf.validated_count()));
  if (as_json) {
    ordered_json j;
    j["descriptor"] = cf.descriptor().name;
    j["terminated"] = cf.terminated();
    ordered_json quots = ordered_json::array();
    for (long i = 0; i < static_cast<long>(cs.size()); ++i)
      quots.push_back(cf.quotients()[static_cast<size_t>(i)].get_str());
    j["quotients"] = quots;
    ordered_json convs = ordered_json::array();
    for (const Convergent& c : cs) {
      ordered_json e;
      e["index"] = c.index;
      e["p"] = c.p.get_str();
      e["q"] = c.q.get_str();
      convs.push_back(std::move(e));
    }
    j["convergents"] = convs;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "descriptor: " << cf.descriptor().name
              << (cf.terminated() ? " (terminates)" : "") << "\n";
    for (const Convergent& c : cs)
      std::cout << "a_" << c.index << " = "
                << cf.quotients()[static_cast<size_t>(c.index)].get_str()
                << "   p/q = " << c.p.get_str() << "/" << c.q.get_str() << "\n";
  }
  return 0;
}

int cmd_bound(const RunConfig& rc, bool as_json) {
  const AlgebraicContext& ctx = shared_context(rc.precision_bits);
  BoundCertificate b = derive_absolute_bound(ctx, parse_problem(rc.problem));
  if (as_json) {
    ordered_json j;
    j["problem"] = to_string(b.problem);
    j["constant_lambda1"] = json_real(b.c_lambda1);
    j["constant_lambda2"] = json_real(b.c_lambda2);
    j["chain_linear"] = json_real(b.chain_linear);
    j["chain_constant"] = json_real(b.chain_constant);
    j["n_bound"] = b.absolute_n_bound.get_str();
    j["trace"] = b.inequality_trace;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "problem: " << to_string(b.problem) << "\n";
    for (const std::string& s : b.inequality_trace) std::cout << s << "\n";
  }
  return 0;
}

int cmd_reduce(const RunConfig& rc, int round, bool as_json) {
  Problem problem = parse_problem(rc.problem);
  bool pad = problem == Problem::padovan;
  mpz_class m = (pad ? 6 : 9) * detail::pow10(pad ? 31 : 29);
  ContinuedFraction tau_cf(tau_log_alpha_over_log2(), rc.cfrac_precision_bits);
  mpfr_prec_t cp = rc.cfrac_precision_bits;
  ordered_json j;
  j["problem"] = to_string(problem);
  if (round == 0 || round == 1) {
    RealDescriptor mu = pad ? mu_padovan() : mu_perrin();
    ReducedBound r = reduce_once(
        tau_cf,
        {tau_cf.descriptor(), mu, Ball::from_long(pad ? 12 : 18, cp),
         Ball::from_long(2, cp), m},
        rc.convergent_horizon);
    if (!as_json)
      std::cout << "round 1: status " << to_string(r.status) << ", bound "
                << r.omega_bound << ", q = " << r.convergent_used.q.get_str()
                << ", epsilon = " << r.epsilon.midpoint_string(6) << "\n";
    ordered_json r1;
    r1["q"] = r.convergent_used.q.get_str();
    r1["epsilon"] = json_real(r.epsilon);
    r1["bound"] = r.omega_bound;
    r1["status"] = to_string(r.status);
    j["round1"] = r1;
  }
  if (round == 0 || round == 2) {
    FamilyResult f = reduce_family(tau_cf, problem, pad ? 137 : 142,
                                   Ball::from_long(pad ? 15 : 24, cp),
                                   Ball::from_long(2, cp), m,
                                   rc.convergent_horizon);
    if (!as_json) {
      std::cout << "round 2: max bound " << f.max_ok_bound << " over "
                << f.per_t.size() << " slots\n";
      for (const ReducedBound& r : f.per_t)
        std::cout << "  t = " << r.t << ": " << to_string(r.status)
                  << ", bound " << r.omega_bound
                  << ", epsilon = " << r.epsilon.midpoint_string(6) << "\n";
    }
    ordered_json per_t = ordered_json::array();
    for (const ReducedBound& r : f.per_t) {
      ordered_json e;
      e["t"] = r.t;
      e["bound"] = r.omega_bound;
      e["status"] = to_string(r.status);
      e["epsilon"] = json_real(r.epsilon);
      per_t.push_back(std::move(e));
    }
    ordered_json r2;
    r2["per_t"] = per_t;
    r2["bound"] = f.max_ok_bound;
    r2["failed_t"] = f.failed_t;
    j["round2"] = r2;
  }
  if (as_json) std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_search(const RunConfig& rc, long k_max, long n_max) {
  Problem problem = parse_problem(rc.problem);
  if (k_max == 0) k_max = problem == Problem::padovan ? 850 : 870;
  if (n_max == 0) n_max = 300;
  std::cout << solutions_csv(search_sums(problem, k_max, n_max));
  return 0;
}

int cmd_pipeline(const RunConfig& rc) {
  PipelineConfig cfg;
  cfg.precision_bits = rc.precision_bits;
  cfg.cfrac_precision_bits = rc.cfrac_precision_bits;
  cfg.convergent_horizon = rc.convergent_horizon;
  Certificate cert = run_pipeline(parse_problem(rc.problem), cfg);
  std::cout << emit_certificate(cert, parse_format(rc.format));
  return cert.table_diff.problems.empty() ? 0 : 2;
}

int cmd_verify(const RunConfig& rc, const std::string& triple_s) {
  SolutionTriple s;
  if (std::sscanf(triple_s.c_str(), "%ld,%ld,%ld", &s.k, &s.n, &s.m) != 3)
    throw CLI::ValidationError("triple must be k,n,m");
  Problem problem = parse_problem(rc.problem);
  bool ok = verify_triple(problem, s);
  const char* seq = to_string(sequence_of(problem));
  std::cout << seq << "(" << s.k << ") "
            << (ok ? "= " : "!= ") << "J(" << s.n << ") + J(" << s.m << ")"
            << (ok ? ": verified" : ": equation fails") << "\n";
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified solver for Padovan/Perrin = Jacobsthal + Jacobsthal"};
  app.set_config("--config");
  RunConfig rc;
  app.add_option("--bits", rc.precision_bits, "working precision in bits")
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--cfrac-bits", rc.cfrac_precision_bits,
                 "continued-fraction precision in bits")
      ->check(CLI::Range(64L, 1L << 22));
  app.add_option("--horizon", rc.convergent_horizon,
                 "extra convergents to try when epsilon <= 0")
      ->check(CLI::Range(1L, 10000L));
  app.require_subcommand(1);

  auto* seq = app.add_subcommand("seq", "emit sequence terms as index,value");
  std::string kind_s;
  long max_index = 0;
  std::string seq_fmt = "csv";
  seq->add_option("kind", kind_s, "padovan | perrin | jacobsthal")->required();
  seq->add_option("max_index", max_index, "last index to emit")->required();
  seq->add_option("--format", seq_fmt, "csv | text");

  auto* ctxc = app.add_subcommand("ctx", "print the certified root system");

  auto* cfr = app.add_subcommand("cfrac", "continued fraction of a descriptor");
  std::string desc = "tau";
  long count = 10;
  bool cfrac_json = false;
  cfr->add_option("--tau", desc, "value descriptor")->required();
  cfr->add_option("--count", count, "validated quotients wanted")->required();
  cfr->add_flag("--json", cfrac_json, "emit JSON");

  auto* bnd = app.add_subcommand("bound", "absolute bound certificate");
  bool bound_json = false;
  bnd->add_option("--problem", rc.problem, "padovan | perrin")->required();
  bnd->add_flag("--json", bound_json, "emit JSON");

  auto* red = app.add_subcommand("reduce", "continued-fraction reductions");
  int round = 0;
  bool reduce_json = false;
  red->add_option("--problem", rc.problem, "padovan | perrin")->required();
  red->add_option("--round", round, "1 or 2 (default both)")
      ->check(CLI::Range(1, 2));
  red->add_flag("--json", reduce_json, "emit JSON");

  auto* sea = app.add_subcommand("search", "exhaustive solution search");
  long k_max = 0, n_max = 0;
  sea->add_option("--problem", rc.problem, "padovan | perrin")->required();
  sea->add_option("--k-max", k_max, "left-hand index cap");
  sea->add_option("--n-max", n_max, "Jacobsthal index cap");

  auto* pip = app.add_subcommand("pipeline", "full proof pipeline certificate");
  pip->add_option("--problem", rc.problem, "padovan | perrin")->required();
  pip->add_option("--format", rc.format, "text | json | csv");

  auto* ver = app.add_subcommand("verify", "check one triple exactly");
  std::string triple_s;
  ver->add_option("--problem", rc.problem, "padovan | perrin")->required();
  ver->add_option("--triple", triple_s, "k,n,m")->required();

  // Global options may follow the subcommand; usage problems exit 1.
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (seq->parsed()) return cmd_seq(kind_s, max_index, seq_fmt);
    if (ctxc->parsed()) return cmd_ctx(rc.precision_bits);
    if (cfr->parsed())
      return cmd_cfrac(desc, count, rc.cfrac_precision_bits, cfrac_json);
    if (bnd->parsed()) return cmd_bound(rc, bound_json);
    if (red->parsed()) return cmd_reduce(rc, round, reduce_json);
    if (sea->parsed()) return cmd_search(rc, k_max, n_max);
    if (pip->parsed()) return cmd_pipeline(rc);
    if (ver->parsed()) return cmd_verify(rc, triple_s);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
