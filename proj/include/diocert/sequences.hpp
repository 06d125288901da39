#pragma once

// Exact integer engines for the three recurrences:
//   Padovan    P_0 = P_1 = P_2 = 1,      P_k = P_{k-2} + P_{k-3}   (k >= 3)
//   Perrin     R_0 = 3, R_1 = 0, R_2 = 2, R_k = R_{k-2} + R_{k-3}  (k >= 3)
//   Jacobsthal J_0 = 0, J_1 = 1,          J_n = J_{n-1} + 2 J_{n-2} (n >= 2)
// All terms are arbitrary-precision integers; lookups are memoized.

#include <gmpxx.h>

#include <deque>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace diocert {

enum class SequenceKind { padovan, perrin, jacobsthal };

// The two target equations share everything except the left-hand sequence.
enum class Problem { padovan, perrin };

inline SequenceKind sequence_of(Problem p) {
  return p == Problem::padovan ? SequenceKind::padovan : SequenceKind::perrin;
}

inline const char* to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::padovan: return "padovan";
    case SequenceKind::perrin: return "perrin";
    default: return "jacobsthal";
  }
}

inline const char* to_string(Problem p) {
  return p == Problem::padovan ? "padovan" : "perrin";
}

namespace detail {

template <typename Container>
void extend_terms(SequenceKind kind, Container& t, long upto) {
  if (t.empty()) {
    switch (kind) {
      case SequenceKind::padovan: t = {1_mpz, 1_mpz, 1_mpz}; break;
      case SequenceKind::perrin: t = {3_mpz, 0_mpz, 2_mpz}; break;
      case SequenceKind::jacobsthal: t = {0_mpz, 1_mpz}; break;
    }
  }
  while (static_cast<long>(t.size()) <= upto) {
    size_t i = t.size();
    if (kind == SequenceKind::jacobsthal)
      t.push_back(t[i - 1] + 2 * t[i - 2]);
    else
      t.push_back(t[i - 2] + t[i - 3]);
  }
}

}  // namespace detail

// Immutable table of terms 0..max_index; safe to share across readers.
class TermTable {
 public:
  TermTable(SequenceKind kind, long max_index) : kind_(kind) {
    if (max_index < 0)
      throw std::invalid_argument("TermTable: max_index must be non-negative");
    detail::extend_terms(kind, terms_, max_index);
    terms_.resize(static_cast<size_t>(max_index) + 1);
  }

  SequenceKind kind() const { return kind_; }
  long max_index() const { return static_cast<long>(terms_.size()) - 1; }

  const mpz_class& term(long i) const {
    if (i < 0 || i > max_index())
      throw std::out_of_range("TermTable: index out of range");
    return terms_[static_cast<size_t>(i)];
  }

  const std::vector<mpz_class>& terms() const { return terms_; }

 private:
  SequenceKind kind_;
  std::vector<mpz_class> terms_;
};

// Memoized term lookup. Caches grow under a lock; deque growth never moves
// existing elements, so returned references stay valid.
inline const mpz_class& term(SequenceKind kind, long index) {
  if (index < 0) throw std::invalid_argument("term: index must be non-negative");
  static std::mutex mu;
  static std::deque<mpz_class> cache[3];
  std::lock_guard<std::mutex> lock(mu);
  auto& t = cache[static_cast<int>(kind)];
  detail::extend_terms(kind, t, index);
  return t[static_cast<size_t>(index)];
}

inline TermTable table(SequenceKind kind, long max_index) {
  if (max_index < 2)
    throw std::invalid_argument("table: max_index must be at least 2");
  return TermTable(kind, max_index);
}

}  // namespace diocert
