#pragma once

// Exhaustive search below the reduced bounds, verification of individual
// triples, the embedded reference tables with a diff engine, and the
// end-to-end pipeline that assembles a proof certificate.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "diocert/algebraic.hpp"
#include "diocert/contfrac.hpp"
#include "diocert/matveev.hpp"
#include "diocert/reduction.hpp"
#include "diocert/sequences.hpp"

namespace diocert {

struct SolutionTriple {
  long k = 0;
  long n = 0;
  long m = 0;
  auto operator<=>(const SolutionTriple&) const = default;
};

// Exact check of term(A, k) == J_n + J_m (n >= m not enforced here).
inline bool verify_triple(Problem problem, const SolutionTriple& s) {
  if (s.k < 0 || s.n < 0 || s.m < 0) return false;
  return term(sequence_of(problem), s.k) ==
         term(SequenceKind::jacobsthal, s.n) + term(SequenceKind::jacobsthal, s.m);
}

// All triples (k, n, m) with 0 <= k <= k_max, 0 <= m <= n <= n_max and
// term(k) = J_n + J_m, at index level: J_1 = J_2 = 1 map to both indices, so
// value-equal solutions with different index spellings are all emitted.
// The k range is partitioned across threads; a final sort restores the
// deterministic (k, n, m) order.
inline std::vector<SolutionTriple> search_sums(Problem problem, long k_max,
                                               long n_max) {
  if (k_max < 2 || n_max < 2)
    throw std::invalid_argument("search_sums: k_max and n_max must be >= 2");

  TermTable jac(SequenceKind::jacobsthal, n_max);
  TermTable lhs(sequence_of(problem), k_max);
  std::map<mpz_class, std::vector<long>> value_to_indices;
  for (long i = 0; i <= n_max; ++i)
    value_to_indices[jac.term(i)].push_back(i);

  unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  std::vector<std::vector<SolutionTriple>> found(workers);
  auto scan_block = [&](unsigned w) {
    std::vector<SolutionTriple>& out = found[w];
    for (long k = static_cast<long>(w); k <= k_max;
         k += static_cast<long>(workers)) {
      const mpz_class& target = lhs.term(k);
      for (long m = 0; m <= n_max; ++m) {
        const mpz_class& jm = jac.term(m);
        if (jm > target) continue;
        auto it = value_to_indices.find(target - jm);
        if (it == value_to_indices.end()) continue;
        for (long n : it->second)
          if (n >= m) out.push_back({k, n, m});
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(scan_block, w);
  scan_block(0);
  for (auto& th : pool) th.join();

  std::vector<SolutionTriple> all;
  for (auto& v : found) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end());
  return all;
}

// All (k, m) with R_k = 2^m, 1 <= m <= m_max. The growth envelope forces
// k <= 3m once m >= 4; scanning k up to max(3 m_max, 8) also covers the
// small-m region where that inequality has not kicked in (2^m <= 8 implies
// k <= 7 because R_8 = 10).
inline std::vector<std::pair<long, long>> search_power_of_two(long m_max) {
  if (m_max < 1) throw std::invalid_argument("search_power_of_two: m_max must be >= 1");
  long k_max = std::max(3 * m_max, 8L);
  std::vector<std::pair<long, long>> out;
  for (long k = 0; k <= k_max; ++k) {
    const mpz_class& r = term(SequenceKind::perrin, k);
    if (r < 2) continue;
    if (mpz_popcount(r.get_mpz_t()) != 1) continue;
    long m = static_cast<long>(mpz_sizeinbase(r.get_mpz_t(), 2)) - 1;
    if (m >= 1 && m <= m_max) out.emplace_back(k, m);
  }
  return out;
}

// ---- embedded reference tables ------------------------------------------

// Solution tables as published for the two equations; the diff engine
// re-derives everything and classifies each row instead of trusting them.
inline const std::vector<SolutionTriple>& reference_table(Problem problem) {
  static const std::vector<SolutionTriple> padovan_rows = {
      {0, 1, 0}, {1, 1, 0}, {2, 1, 0},  {3, 2, 1},  {4, 2, 1},
      {5, 3, 0}, {6, 3, 2}, {6, 3, 1},  {7, 4, 0},  {10, 5, 1},
      {10, 5, 2}, {11, 5, 4}, {12, 6, 0}, {17, 8, 1}, {17, 8, 2}};
  static const std::vector<SolutionTriple> perrin_rows = {
      {0, 3, 1}, {1, 0, 0}, {2, 2, 1},  {2, 1, 1},  {3, 3, 1},
      {4, 2, 1}, {4, 1, 1}, {5, 4, 0},  {6, 4, 0},  {8, 4, 4},
      {9, 5, 1}, {9, 5, 2}, {11, 6, 1}, {11, 6, 2}, {16, 8, 4}};
  return problem == Problem::padovan ? padovan_rows : perrin_rows;
}

enum class DiffStatus { verified, failed, missing };

inline const char* to_string(DiffStatus s) {
  switch (s) {
    case DiffStatus::verified: return "verified";
    case DiffStatus::failed: return "failed";
    default: return "missing";
  }
}

struct TableDiffEntry {
  SolutionTriple entry;
  DiffStatus status;
  std::optional<SolutionTriple> nearest_valid;
};

struct TableDiff {
  long verified_count = 0;
  std::vector<TableDiffEntry> problems;          // failed/missing rows only
  std::vector<SolutionTriple> unlisted;          // valid but not in the table
};

inline TableDiff diff_against_reference(Problem problem,
                                        const std::vector<SolutionTriple>& found) {
  TableDiff diff;
  const std::vector<SolutionTriple>& rows = reference_table(problem);
  for (const SolutionTriple& row : rows) {
    bool is_solution = verify_triple(problem, row);
    bool was_found = std::binary_search(found.begin(), found.end(), row);
    if (is_solution && was_found) {
      ++diff.verified_count;
      continue;
    }
    TableDiffEntry e{row, is_solution ? DiffStatus::missing : DiffStatus::failed,
                     std::nullopt};
    // Nearest valid triple with the same k (L1 distance in (n, m), then
    // lexicographic), so a typo'd row points at its correction.
    long best = -1;
    for (const SolutionTriple& s : found) {
      if (s.k != row.k) continue;
      long d = std::abs(s.n - row.n) + std::abs(s.m - row.m);
      if (best < 0 || d < best) {
        best = d;
        e.nearest_valid = s;
      }
    }
    diff.problems.push_back(std::move(e));
  }
  std::vector<SolutionTriple> sorted_rows = rows;
  std::sort(sorted_rows.begin(), sorted_rows.end());
  for (const SolutionTriple& s : found)
    if (!std::binary_search(sorted_rows.begin(), sorted_rows.end(), s))
      diff.unlisted.push_back(s);
  return diff;
}

// ---- pipeline ------------------------------------------------------------

struct SearchRange {
  long k_max = 0;
  long n_max = 0;
  long m_max = 0;
};

struct PipelineConfig {
  mpfr_prec_t precision_bits = 256;
  mpfr_prec_t cfrac_precision_bits = 4096;
  long convergent_horizon = 40;
};

struct Certificate {
  Problem problem;
  BoundCertificate absolute_bound;
  mpz_class reduction_m;  // M fed to both reduction rounds
  ReducedBound round1;
  FamilyResult round2;
  std::optional<LegendreBranch> legendre;
  std::vector<std::pair<long, long>> power_of_two_solutions;
  SearchRange search_range;
  std::vector<SolutionTriple> solutions;
  TableDiff table_diff;
  std::vector<std::string> notes;
};

namespace detail {

inline mpz_class pow10(unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace detail

// End-to-end proof chain for one equation. Deterministic for a fixed config.
inline Certificate run_pipeline(Problem problem, const PipelineConfig& cfg = {}) {
  bool pad = problem == Problem::padovan;
  const AlgebraicContext& ctx = shared_context(cfg.precision_bits);

  Certificate cert;
  cert.problem = problem;
  cert.absolute_bound = derive_absolute_bound(ctx, problem);

  // M as used in the published reductions; certified to dominate 3n.
  cert.reduction_m = (pad ? 6 : 9) * detail::pow10(pad ? 31 : 29);
  if (3 * cert.absolute_bound.absolute_n_bound > cert.reduction_m)
    throw std::runtime_error("run_pipeline: M does not dominate 3n bound");

  ContinuedFraction tau_cf(tau_log_alpha_over_log2(), cfg.cfrac_precision_bits);
  mpfr_prec_t cp = cfg.cfrac_precision_bits;

  // Round 1: bound t = n - m.
  RealDescriptor mu1 = pad ? mu_padovan() : mu_perrin();
  Ball a1 = Ball::from_long(pad ? 12 : 18, cp);
  Ball b2 = Ball::from_long(2, cp);
  cert.round1 = reduce_once(tau_cf, {tau_cf.descriptor(), mu1, a1, b2,
                                     cert.reduction_m},
                            cfg.convergent_horizon);
  if (cert.round1.status != ReduceStatus::ok)
    throw std::runtime_error("run_pipeline: round-1 reduction failed");

  // Round 2: family over t, covering both the computed round-1 bound and the
  // published t ranges (a superset cannot lose solutions).
  long t_max = std::max(cert.round1.omega_bound, pad ? 137L : 142L);
  Ball a2 = Ball::from_long(pad ? 15 : 24, cp);
  cert.round2 = reduce_family(tau_cf, problem, t_max, a2, b2, cert.reduction_m,
                              cfg.convergent_horizon);

  // Degenerate slots route to the Legendre branch (expected: t = 1, Perrin).
  long legendre_m_max = 0;
  if (!cert.round2.failed_t.empty()) {
    cert.legendre = legendre_branch(tau_cf, cert.reduction_m);
    legendre_m_max = cert.legendre->m_bound;
    cert.power_of_two_solutions =
        search_power_of_two(std::max(legendre_m_max, 299L));
  }

  // Search over the max of computed and published ranges.
  long m_c = std::max(cert.round2.max_ok_bound, legendre_m_max);
  long n_c = m_c + cert.round1.omega_bound;
  cert.search_range.k_max = std::max(3 * n_c, pad ? 850L : 870L);
  cert.search_range.n_max = std::max(n_c, 300L);
  cert.search_range.m_max = std::max(m_c, pad ? 144L : 145L);
  cert.solutions =
      search_sums(problem, cert.search_range.k_max, cert.search_range.n_max);
  cert.table_diff = diff_against_reference(problem, cert.solutions);

  // Bound coverage: the reduction chain may never exclude a found solution.
  for (const SolutionTriple& s : cert.solutions) {
    if (s.k > cert.search_range.k_max || s.n > cert.search_range.n_max)
      throw std::runtime_error("run_pipeline: solution escapes search range");
  }

  cert.notes = {
      "jacobsthal recurrence used: J_n = J_{n-1} + 2 J_{n-2} (matches the "
      "listed values and the closed form (2^n - (-1)^n)/3); the variant "
      "2 J_{n-1} + J_{n-2} quoted alongside it does not",
      "published q_85 values correspond to q_81 (35 digits) and q_86 (40 "
      "digits) of log(alpha)/log(2) in 0-based indexing; the actual q_85 has "
      "39 digits",
      "epsilon is evaluated at a single convergent per reduction; the "
      "published display mixes q_81 and q_85 indices",
      "growth envelope alpha^(k-3) <= P_k fails at k = 3 (P_3 = 2 > alpha^2); "
      "it holds at every other index checked up to 1000",
      "unlisted valid triples found by the index-level search: " +
          std::to_string(cert.table_diff.unlisted.size()),
  };
  if (!pad) {
    cert.notes.push_back(
        "family slot t = 1 is structurally degenerate: 3/(1 + 2^-1) = 2 makes "
        "mu = 1 exactly, so epsilon = -M||tau q|| < 0 at every convergent; "
        "the branch is handled via R_k = 2^m instead");
    std::string pairs;
    for (auto& [k, m] : cert.power_of_two_solutions) {
      if (!pairs.empty()) pairs += ", ";
      pairs += "(" + std::to_string(k) + "," + std::to_string(m) + ")";
    }
    cert.notes.push_back("power-of-two solutions R_k = 2^m found: " + pairs);
  }
  return cert;
}

}  // namespace diocert
