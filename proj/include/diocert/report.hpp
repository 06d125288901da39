#pragma once

// Certificate serialization. JSON uses a fixed key order and renders every
// certified real as a decimal string pair {value, radius} — no binary floats
// appear in reports, so emitted bytes are stable across runs and platforms.

#include <string>

#include <json.hpp>

#include "diocert/solver.hpp"

namespace diocert {

using ordered_json = nlohmann::ordered_json;

enum class OutputFormat { text, json, csv };

inline ordered_json json_real(const Ball& b, int digits = 20) {
  ordered_json j;
  j["value"] = b.midpoint_string(digits);
  j["radius"] = b.radius_string();
  return j;
}

inline ordered_json json_triple(const SolutionTriple& s) {
  return ordered_json::array({s.k, s.n, s.m});
}

inline ordered_json certificate_json(const Certificate& cert) {
  ordered_json j;
  j["problem"] = to_string(cert.problem);

  ordered_json bound;
  bound["constant_lambda1"] = json_real(cert.absolute_bound.c_lambda1);
  bound["constant_lambda2"] = json_real(cert.absolute_bound.c_lambda2);
  bound["n_bound"] = cert.absolute_bound.absolute_n_bound.get_str();
  bound["trace"] = cert.absolute_bound.inequality_trace;
  j["absolute_bound"] = bound;

  ordered_json r1;
  r1["q"] = cert.round1.convergent_used.q.get_str();
  r1["epsilon"] = json_real(cert.round1.epsilon);
  r1["bound"] = cert.round1.omega_bound;
  j["round1"] = r1;

  ordered_json r2;
  ordered_json per_t = ordered_json::array();
  for (const ReducedBound& r : cert.round2.per_t) {
    ordered_json e;
    e["t"] = r.t;
    e["q"] = r.convergent_used.q.get_str();
    e["epsilon"] = json_real(r.epsilon);
    e["bound"] = r.status == ReduceStatus::ok ? ordered_json(r.omega_bound)
                                              : ordered_json(nullptr);
    e["status"] = to_string(r.status);
    per_t.push_back(std::move(e));
  }
  r2["per_t"] = std::move(per_t);
  r2["bound"] = cert.round2.max_ok_bound;
  r2["failed_t"] = cert.round2.failed_t;
  j["round2"] = r2;

  if (cert.legendre) {
    ordered_json lg;
    lg["b_max"] = cert.legendre->window.b_max.get_str();
    lg["m_bound"] = cert.legendre->m_bound;
    j["legendre"] = lg;
  } else {
    j["legendre"] = nullptr;
  }

  ordered_json range;
  range["k_max"] = cert.search_range.k_max;
  range["n_max"] = cert.search_range.n_max;
  range["m_max"] = cert.search_range.m_max;
  j["search_range"] = range;

  ordered_json sols = ordered_json::array();
  for (const SolutionTriple& s : cert.solutions) sols.push_back(json_triple(s));
  j["solutions"] = std::move(sols);

  ordered_json diff = ordered_json::array();
  for (const TableDiffEntry& e : cert.table_diff.problems) {
    ordered_json d;
    d["entry"] = json_triple(e.entry);
    d["status"] = to_string(e.status);
    d["nearest_valid"] =
        e.nearest_valid ? json_triple(*e.nearest_valid) : ordered_json(nullptr);
    diff.push_back(std::move(d));
  }
  j["paper_table_diff"] = std::move(diff);

  ordered_json unlisted = ordered_json::array();
  for (const SolutionTriple& s : cert.table_diff.unlisted)
    unlisted.push_back(json_triple(s));
  j["unlisted_solutions"] = std::move(unlisted);

  j["notes"] = cert.notes;
  return j;
}

inline std::string solutions_csv(const std::vector<SolutionTriple>& sols) {
  std::string out = "k,n,m\n";
  for (const SolutionTriple& s : sols)
    out += std::to_string(s.k) + "," + std::to_string(s.n) + "," +
           std::to_string(s.m) + "\n";
  return out;
}

inline std::string certificate_text(const Certificate& cert) {
  std::string out;
  out += std::string("problem: ") + to_string(cert.problem) + "\n";
  out += "absolute bound: n <= " + cert.absolute_bound.absolute_n_bound.get_str() +
         "\n";
  out += "  lambda1 constant: " + cert.absolute_bound.c_lambda1.midpoint_string(8) +
         "\n";
  out += "  chain quadratic coefficient: " +
         cert.absolute_bound.c_lambda2.midpoint_string(8) + "\n";
  out += "round 1: n - m <= " + std::to_string(cert.round1.omega_bound) +
         " at q = " + cert.round1.convergent_used.q.get_str() +
         " (epsilon = " + cert.round1.epsilon.midpoint_string(6) + ")\n";
  out += "round 2: m <= " + std::to_string(cert.round2.max_ok_bound) + " over " +
         std::to_string(cert.round2.per_t.size()) + " family slots";
  if (!cert.round2.failed_t.empty()) {
    out += "; degenerate t:";
    for (long t : cert.round2.failed_t) out += " " + std::to_string(t);
  }
  out += "\n";
  if (cert.legendre) {
    out += "legendre branch: b_max = " + cert.legendre->window.b_max.get_str() +
           ", m <= " + std::to_string(cert.legendre->m_bound) + "\n";
  }
  out += "search range: k <= " + std::to_string(cert.search_range.k_max) +
         ", n <= " + std::to_string(cert.search_range.n_max) + "\n";
  out += "solutions (" + std::to_string(cert.solutions.size()) + "):\n";
  for (const SolutionTriple& s : cert.solutions)
    out += "  (" + std::to_string(s.k) + ", " + std::to_string(s.n) + ", " +
           std::to_string(s.m) + ")\n";
  out += "reference rows verified: " + std::to_string(cert.table_diff.verified_count) +
         "/" + std::to_string(reference_table(cert.problem).size()) + "\n";
  for (const TableDiffEntry& e : cert.table_diff.problems) {
    out += "  " + std::string(to_string(e.status)) + ": (" +
           std::to_string(e.entry.k) + ", " + std::to_string(e.entry.n) + ", " +
           std::to_string(e.entry.m) + ")";
    if (e.nearest_valid)
      out += " -> nearest valid (" + std::to_string(e.nearest_valid->k) + ", " +
             std::to_string(e.nearest_valid->n) + ", " +
             std::to_string(e.nearest_valid->m) + ")";
    out += "\n";
  }
  if (!cert.table_diff.unlisted.empty()) {
    out += "valid triples not in the reference table:\n";
    for (const SolutionTriple& s : cert.table_diff.unlisted)
      out += "  (" + std::to_string(s.k) + ", " + std::to_string(s.n) + ", " +
             std::to_string(s.m) + ")\n";
  }
  for (const std::string& n : cert.notes) out += "note: " + n + "\n";
  return out;
}

inline std::string emit_certificate(const Certificate& cert, OutputFormat format) {
  switch (format) {
    case OutputFormat::json:
      return certificate_json(cert).dump(2) + "\n";
    case OutputFormat::csv:
      return solutions_csv(cert.solutions);
    default:
      return certificate_text(cert);
  }
}

}  // namespace diocert
