// Acceptance suite: runs the end-to-end criteria the project must satisfy
// and prints one [PASS]/[FAIL] line per criterion. Exits nonzero if any
// criterion fails. Optional argv[1] names the CLI binary; when given, the
// determinism criterion also compares two full process invocations.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "diocert/report.hpp"
#include "diocert/solver.hpp"

namespace {

using namespace diocert;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << what;
  if (!detail.empty()) std::cout << " — " << detail;
  std::cout << std::endl;
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string run_binary(const std::string& cmd) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return "";
  std::string out;
  std::array<char, 4096> buf{};
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), got);
  pclose(pipe);
  return out;
}

mpz_class pow10z(unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

bool contains_triple(const std::vector<SolutionTriple>& v, const SolutionTriple& s) {
  return std::binary_search(v.begin(), v.end(), s);
}

// ---- criterion 1: Padovan solution-table reproduction ----------------------

void criterion1(const Certificate& pad) {
  std::ostringstream detail;
  bool pass = true;

  auto t0 = Clock::now();
  std::vector<SolutionTriple> sols = search_sums(Problem::padovan, 850, 300);
  double search_s = seconds_since(t0);
  pass &= search_s < 10.0;

  // Every published row reproduced and verified; diff of failed/missing rows
  // empty.
  pass &= pad.table_diff.verified_count == 15;
  pass &= pad.table_diff.problems.empty();
  for (const SolutionTriple& row : reference_table(Problem::padovan))
    pass &= contains_triple(pad.solutions, row) &&
            verify_triple(Problem::padovan, row);

  // The index-level search is complete, which surfaces triples the published
  // table omits; each one must itself verify and match the independently
  // recomputed set.
  const std::vector<SolutionTriple> expected_extra = {
      {0, 2, 0}, {1, 2, 0}, {2, 2, 0}, {3, 1, 1},
      {3, 2, 2}, {4, 1, 1}, {4, 2, 2}, {17, 7, 7}};
  pass &= pad.table_diff.unlisted == expected_extra;
  for (const SolutionTriple& s : pad.table_diff.unlisted)
    pass &= verify_triple(Problem::padovan, s);
  pass &= sols == pad.solutions;

  detail << "all 15 published rows verified, diff empty; search k<=850,n<=300 in "
         << std::fixed << search_s << "s; completeness finding: "
         << pad.table_diff.unlisted.size()
         << " additional valid index-level triples the published table omits "
            "(incl. (17,7,7): 86 = 43+43), surfaced in unlisted_solutions";
  report(1, pass, "Padovan table reproduction with empty diff", detail.str());
}

// ---- criterion 2: Perrin reproduction with discrepancy detection -----------

void criterion2(const Certificate& per) {
  bool pass = per.table_diff.verified_count == 13 &&
              per.table_diff.problems.size() == 2;
  if (pass) {
    const TableDiffEntry& e0 = per.table_diff.problems[0];
    const TableDiffEntry& e1 = per.table_diff.problems[1];
    pass &= e0.entry == SolutionTriple{0, 3, 1} &&
            e0.status == DiffStatus::failed && e0.nearest_valid &&
            *e0.nearest_valid == SolutionTriple{0, 3, 0};
    pass &= e1.entry == SolutionTriple{3, 3, 1} &&
            e1.status == DiffStatus::failed && e1.nearest_valid &&
            *e1.nearest_valid == SolutionTriple{3, 3, 0};
    pass &= contains_triple(per.solutions, {0, 3, 0}) &&
            contains_triple(per.solutions, {3, 3, 0});
  }
  report(2, pass, "Perrin reproduction flags (0,3,1) and (3,3,1)",
         "13/15 rows verified; both bad rows report nearest valid triples "
         "(0,3,0) and (3,3,0) found by brute force");
}

// ---- criterion 3: absolute Matveev bounds ----------------------------------

void criterion3(const Certificate& pad, const Certificate& per) {
  bool pass = true;
  pass &= pad.absolute_bound.absolute_n_bound <= 2 * pow10z(31);
  pass &= per.absolute_bound.absolute_n_bound <= 3 * pow10z(29);
  pass &= pad.absolute_bound.c_lambda1.less_than(
              Ball::from_integer(4 * pow10z(14), 256)) == Verdict::holds;
  pass &= per.absolute_bound.c_lambda1.less_than(
              Ball::from_integer(6 * pow10z(12), 256)) == Verdict::holds;
  std::ostringstream detail;
  detail << "n-bounds " << pad.absolute_bound.absolute_n_bound.get_str()
         << " <= 2e31 and " << per.absolute_bound.absolute_n_bound.get_str()
         << " <= 3e29; lambda constants "
         << pad.absolute_bound.c_lambda1.midpoint_string(8) << " <= 4e14 and "
         << per.absolute_bound.c_lambda1.midpoint_string(8) << " <= 6e12";
  report(3, pass, "computed Matveev chains stay inside published envelopes",
         detail.str());
}

// ---- criterion 4: first reduction round ------------------------------------

void criterion4(const Certificate& pad, const Certificate& per) {
  bool pass = true;
  pass &= pad.reduction_m == 6 * pow10z(31);
  pass &= per.reduction_m == 9 * pow10z(29);
  pass &= pad.round1.status == ReduceStatus::ok &&
          pad.round1.omega_bound <= 137;
  pass &= per.round1.status == ReduceStatus::ok &&
          per.round1.omega_bound <= 142;
  pass &= pad.round1.epsilon.is_positive() == Verdict::holds;
  pass &= per.round1.epsilon.is_positive() == Verdict::holds;
  std::ostringstream detail;
  detail << "n-m <= " << pad.round1.omega_bound << " (<=137) and <= "
         << per.round1.omega_bound << " (<=142); epsilon certified positive: "
         << pad.round1.epsilon.midpoint_string(6) << " and "
         << per.round1.epsilon.midpoint_string(6);
  report(4, pass, "round-1 reduction bounds", detail.str());
}

// ---- criterion 5: family reduction + Legendre branch -----------------------

void criterion5(const Certificate& pad, const Certificate& per) {
  bool pass = true;
  pass &= pad.round2.max_ok_bound <= 140 && pad.round2.failed_t.empty();
  pass &= per.round2.max_ok_bound <= 145;
  pass &= per.round2.failed_t == std::vector<long>{1};
  pass &= per.legendre.has_value() && per.legendre->m_bound == 109;
  pass &= per.power_of_two_solutions ==
          std::vector<std::pair<long, long>>({{2, 1}, {4, 1}});
  // Independent enumeration oracle for the power-of-two branch.
  std::vector<std::pair<long, long>> oracle;
  for (long k = 0; k <= 897; ++k) {
    const mpz_class& r = term(SequenceKind::perrin, k);
    if (r >= 2 && mpz_popcount(r.get_mpz_t()) == 1)
      oracle.emplace_back(k,
                          static_cast<long>(mpz_sizeinbase(r.get_mpz_t(), 2)) - 1);
  }
  pass &= oracle == per.power_of_two_solutions;
  std::ostringstream detail;
  detail << "m <= " << pad.round2.max_ok_bound << " (<=140) and <= "
         << per.round2.max_ok_bound
         << " (<=145); Perrin t=1 epsilon-nonpositive, Legendre branch m <= "
         << (per.legendre ? per.legendre->m_bound : -1)
         << ", R_k = 2^m solutions {(2,1),(4,1)}";
  report(5, pass, "round-2 family reduction and degenerate branch", detail.str());
}

// ---- criterion 6: property suites ------------------------------------------

bool props_binet_residual() {
  const AlgebraicContext& ctx = shared_context(640);
  for (long k = 1; k <= 500; ++k) {
    // binet_padovan certifies |P_k - a alpha^k| < alpha^(-k/2) internally.
    Ball v = binet_padovan(ctx, k);
    Ball residual =
        abs(Ball::from_integer(term(SequenceKind::padovan, k), 640) - v);
    if (residual.less_than(pow_ui(ctx.beta_abs, k)) != Verdict::holds)
      return false;
  }
  return true;
}

bool props_growth() {
  const AlgebraicContext& ctx = shared_context(256);
  for (auto& [k, ok] : check_growth(ctx, SequenceKind::padovan, 1, 1000))
    if (ok != (k != 3)) return false;  // fails exactly at k = 3
  for (auto& [n, ok] : check_growth(ctx, SequenceKind::jacobsthal, 1, 1000))
    if (!ok) return false;
  for (auto& [k, ok] : check_growth(ctx, SequenceKind::perrin, 2, 1000))
    if (!ok) return false;
  return true;
}

bool props_jacobsthal_closed_form() {
  mpz_class pow2 = 1;
  for (long n = 0; n <= 5000; ++n) {
    if (3 * term(SequenceKind::jacobsthal, n) != pow2 - (n % 2 == 0 ? 1 : -1))
      return false;
    pow2 *= 2;
  }
  return true;
}

bool props_contfrac() {
  ContinuedFraction cf(tau_log_alpha_over_log2(), 4096);
  cf.ensure(90);
  auto cs = cf.convergents(90);
  Ball tau = tau_log_alpha_over_log2().eval(4096);
  for (size_t i = 1; i < cs.size(); ++i) {
    mpz_class det = cs[i].p * cs[i - 1].q - cs[i - 1].p * cs[i].q;
    if (det != ((i % 2 == 1) ? 1 : -1)) return false;
    Ball err = abs(tau - Ball::from_rational(mpq_class(cs[i].p, cs[i].q), 4096));
    if (err.less_than(Ball::one(4096) /
                      Ball::from_integer(cs[i].q * cs[i].q, 4096)) !=
        Verdict::holds)
      return false;
  }
  return true;
}

bool props_search_oracle() {
  for (Problem pr : {Problem::padovan, Problem::perrin}) {
    std::vector<SolutionTriple> naive;
    for (long k = 0; k <= 60; ++k)
      for (long n = 0; n <= 25; ++n)
        for (long m = 0; m <= n; ++m)
          if (term(sequence_of(pr), k) ==
              term(SequenceKind::jacobsthal, n) +
                  term(SequenceKind::jacobsthal, m))
            naive.push_back({k, n, m});
    std::sort(naive.begin(), naive.end());
    if (search_sums(pr, 60, 25) != naive) return false;
  }
  return true;
}

bool props_precision_doubling(const Certificate& pad, const Certificate& per) {
  PipelineConfig doubled;
  doubled.precision_bits = 512;
  doubled.cfrac_precision_bits = 8192;
  for (const Certificate* base : {&pad, &per}) {
    Certificate hi = run_pipeline(base->problem, doubled);
    if (hi.absolute_bound.absolute_n_bound != base->absolute_bound.absolute_n_bound)
      return false;
    if (hi.round1.omega_bound != base->round1.omega_bound) return false;
    if (hi.round1.convergent_used.q != base->round1.convergent_used.q) return false;
    if (!hi.round1.epsilon.inside(base->round1.epsilon)) return false;
    if (hi.round2.max_ok_bound != base->round2.max_ok_bound) return false;
    if (hi.round2.failed_t != base->round2.failed_t) return false;
    if (hi.solutions != base->solutions) return false;
    if (!hi.absolute_bound.c_lambda1.inside(base->absolute_bound.c_lambda1))
      return false;
  }
  // Context fields nest under doubling.
  const AlgebraicContext& lo_ctx = shared_context(256);
  const AlgebraicContext& hi_ctx = shared_context(512);
  return hi_ctx.alpha.inside(lo_ctx.alpha) &&
         hi_ctx.binet_a.inside(lo_ctx.binet_a) &&
         hi_ctx.log_alpha.inside(lo_ctx.log_alpha);
}

void criterion6(const Certificate& pad, const Certificate& per) {
  auto t0 = Clock::now();
  bool residual = props_binet_residual();
  bool growth = props_growth();
  bool closed = props_jacobsthal_closed_form();
  bool cfrac = props_contfrac();
  bool oracle = props_search_oracle();
  bool doubling = props_precision_doubling(pad, per);
  double total = seconds_since(t0);
  bool pass = residual && growth && closed && cfrac && oracle && doubling &&
              total < 60.0;
  std::ostringstream detail;
  detail << std::fixed << "residual(k<=500) " << (residual ? "ok" : "FAIL")
         << ", growth(<=1000, Padovan upper bound provably fails at k=3 only) "
         << (growth ? "ok" : "FAIL") << ", closed-form(n<=5000) "
         << (closed ? "ok" : "FAIL") << ", contfrac(90) "
         << (cfrac ? "ok" : "FAIL") << ", search-oracle(k<=60,n<=25) "
         << (oracle ? "ok" : "FAIL") << ", precision-doubling "
         << (doubling ? "ok" : "FAIL") << "; total " << total << "s (<60s)";
  report(6, pass, "property suites", detail.str());
}

// ---- criterion 7: determinism ----------------------------------------------

void criterion7(const std::string& cli_path) {
  Certificate a = run_pipeline(Problem::perrin);
  Certificate b = run_pipeline(Problem::perrin);
  std::string ja = emit_certificate(a, OutputFormat::json);
  std::string jb = emit_certificate(b, OutputFormat::json);
  bool pass = ja == jb && !ja.empty();
  std::string detail = "library emission byte-identical across two runs";
  if (!cli_path.empty()) {
    std::string cmd = cli_path + " pipeline --problem padovan --format json";
    std::string o1 = run_binary(cmd);
    std::string o2 = run_binary(cmd);
    pass &= !o1.empty() && o1 == o2;
    detail += "; two CLI process runs byte-identical";
  }
  report(7, pass, "byte-identical certificates", detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path = argc > 1 ? argv[1] : "";
  std::cout << "acceptance suite: certified pipeline for P_k/R_k = J_n + J_m"
            << std::endl;

  Certificate pad = run_pipeline(Problem::padovan);
  Certificate per = run_pipeline(Problem::perrin);

  criterion1(pad);
  criterion2(per);
  criterion3(pad, per);
  criterion4(pad, per);
  criterion5(pad, per);
  criterion6(pad, per);
  criterion7(cli_path);

  if (failures > 0) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
