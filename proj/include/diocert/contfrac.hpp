#pragma once

// Validated continued fractions of certified reals.
//
// A value enters as a symbolic descriptor (re-evaluable at any precision).
// Expansion converts the enclosure [lo, hi] to exact rational endpoints and
// takes the longest common prefix of their exact Euclidean expansions: every
// real inside the enclosure shares that prefix, because the set of reals
// whose expansion starts with a fixed prefix is an interval. Validation then
// recomputes at doubled precision and keeps the agreeing prefix, per the
// contract that published quotients are stable under precision doubling.

#include <gmpxx.h>

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diocert/algebraic.hpp"
#include "diocert/ball.hpp"

namespace diocert {

struct RealDescriptor {
  std::string name;                              // stable identifier
  std::function<Ball(mpfr_prec_t)> eval;         // certified evaluation
  bool exact_rational = false;
  mpq_class rational_value;                      // meaningful when exact
};

// tau = log(alpha) / log(2), the slope every reduction in the pipeline uses.
inline RealDescriptor tau_log_alpha_over_log2() {
  return {"log(alpha)/log(2)",
          [](mpfr_prec_t p) {
            const AlgebraicContext& ctx = shared_context(p);
            return ctx.log_alpha / ctx.log2;
          },
          false,
          mpq_class(0)};
}

// mu for the first Padovan reduction: log(3a) / log(2).
inline RealDescriptor mu_padovan() {
  return {"log(3a)/log(2)",
          [](mpfr_prec_t p) {
            const AlgebraicContext& ctx = shared_context(p);
            return log(Ball::from_long(3, p) * ctx.binet_a) / ctx.log2;
          },
          false,
          mpq_class(0)};
}

// mu for the first Perrin reduction: log(3) / log(2).
inline RealDescriptor mu_perrin() {
  return {"log(3)/log(2)",
          [](mpfr_prec_t p) {
            const AlgebraicContext& ctx = shared_context(p);
            return ctx.log3 / ctx.log2;
          },
          false,
          mpq_class(0)};
}

// Family slot t = n - m: mu_t = log(3a / (1 + 2^-t)) / log(2).
inline RealDescriptor mu_padovan_t(long t) {
  return {"log(3a/(1+2^-" + std::to_string(t) + "))/log(2)",
          [t](mpfr_prec_t p) {
            const AlgebraicContext& ctx = shared_context(p);
            Ball denom = Ball::one(p) + Ball::one(p).mul_2exp(-t);
            return log(Ball::from_long(3, p) * ctx.binet_a / denom) / ctx.log2;
          },
          false,
          mpq_class(0)};
}

// Family slot for Perrin: mu_t = log(3 / (1 + 2^-t)) / log(2).
// t = 1 degenerates: 3 / (1 + 1/2) = 2, so mu_1 = 1 exactly — folded to the
// exact rational so expansions of it terminate instead of escalating.
inline RealDescriptor mu_perrin_t(long t) {
  std::string name = "log(3/(1+2^-" + std::to_string(t) + "))/log(2)";
  if (t == 1)
    return {name, [](mpfr_prec_t p) { return Ball::one(p); }, true, mpq_class(1)};
  return {name,
          [t](mpfr_prec_t p) {
            const AlgebraicContext& ctx = shared_context(p);
            Ball denom = Ball::one(p) + Ball::one(p).mul_2exp(-t);
            return log(Ball::from_long(3, p) / denom) / ctx.log2;
          },
          false,
          mpq_class(0)};
}

inline RealDescriptor rational_descriptor(const mpq_class& q) {
  mpq_class v = q;
  v.canonicalize();
  return {v.get_str(),
          [v](mpfr_prec_t p) { return Ball::from_rational(v, p); },
          true,
          v};
}

// Exact rational with mu identically zero (degenerate-reduction tests).
inline RealDescriptor zero_descriptor() { return rational_descriptor(mpq_class(0)); }

struct Convergent {
  long index;
  mpz_class p;
  mpz_class q;
};

namespace detail {

// Exact Euclidean expansion of num/den (den > 0), at most max_terms quotients.
// Returns the canonical expansion; sets *terminated when it is complete.
inline std::vector<mpz_class> rational_cf(mpz_class num, mpz_class den,
                                          size_t max_terms, bool* terminated) {
  std::vector<mpz_class> quots;
  *terminated = false;
  while (quots.size() < max_terms) {
    mpz_class a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    quots.push_back(a);
    if (r == 0) {
      *terminated = true;
      break;
    }
    num = den;
    den = r;
  }
  return quots;
}

}  // namespace detail

class ContinuedFraction {
 public:
  // The default ceiling allows four escalation rounds beyond the starting
  // precision; context construction cost grows quadratically with precision,
  // so an unbounded ceiling would turn a non-stabilizing input into a hang
  // rather than a clean error.
  explicit ContinuedFraction(RealDescriptor descriptor,
                             mpfr_prec_t start_precision = 4096,
                             mpfr_prec_t precision_ceiling = 0)
      : descriptor_(std::move(descriptor)),
        precision_(start_precision),
        ceiling_(precision_ceiling > 0 ? precision_ceiling
                                       : start_precision * 16) {
    if (start_precision < 64)
      throw std::invalid_argument("ContinuedFraction: precision too small");
  }

  const RealDescriptor& descriptor() const { return descriptor_; }
  mpfr_prec_t precision_bits() const { return precision_; }
  bool terminated() const { return terminated_; }
  long validated_count() const { return static_cast<long>(quotients_.size()); }
  const std::vector<mpz_class>& quotients() const { return quotients_; }

  // Guarantee at least `count` validated quotients (or a complete expansion
  // of a rational input). Each pass extracts the full stable prefix the
  // current enclosure supports; precision doubles only once that prefix is
  // exhausted. Throws precision_error naming the first unstable index if the
  // ceiling is hit.
  void ensure(long count) {
    if (count < 1) throw std::invalid_argument("ensure: count must be >= 1");
    while (validated_count() < count && !terminated_) {
      if (precision_ > ceiling_)
        throw precision_error(
            "continued fraction of " + descriptor_.name +
            " unstable at index " + std::to_string(validated_count()) +
            " (precision ceiling reached)");
      expand_at(precision_);
      if (validated_count() < count && !terminated_) precision_ *= 2;
    }
  }

  std::vector<Convergent> convergents(long count = -1) const {
    long n = count < 0 ? validated_count() : count;
    if (n > validated_count())
      throw std::out_of_range("convergents: beyond validated prefix");
    std::vector<Convergent> out;
    out.reserve(static_cast<size_t>(n));
    mpz_class pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
    for (long i = 0; i < n; ++i) {
      const mpz_class& a = quotients_[static_cast<size_t>(i)];
      mpz_class p = a * pm1 + pm2;
      mpz_class q = a * qm1 + qm2;
      out.push_back({i, p, q});
      pm2 = pm1;
      pm1 = p;
      qm2 = qm1;
      qm1 = q;
    }
    return out;
  }

  // Least-index convergent with q > bound, extending the expansion on demand.
  Convergent first_denominator_exceeding(const mpz_class& bound) {
    if (bound < 1)
      throw std::invalid_argument("first_denominator_exceeding: bound must be >= 1");
    long have = std::max<long>(validated_count(), 8);
    for (;;) {
      ensure(have);
      for (const Convergent& c : convergents())
        if (c.q > bound) return c;
      if (terminated_)
        throw std::runtime_error(
            "first_denominator_exceeding: rational expansion exhausted below bound");
      have *= 2;
    }
  }

  // Convergent by index, extending as needed.
  Convergent convergent(long index) {
    ensure(index + 1);
    return convergents(index + 1).back();
  }

 private:
  // Quotient-count safety cap per pass: a p-bit enclosure cannot support
  // more than ~p/log2(phi^2) quotients, so 2p is a generous ceiling.
  size_t pass_cap(mpfr_prec_t p) const { return static_cast<size_t>(p) * 2; }

  // One expansion pass: evaluate at precision p and at 2p, take the common
  // stable prefix of the enclosure expansions.
  void expand_at(mpfr_prec_t p) {
    bool term1 = false, term2 = false;
    std::vector<mpz_class> a1 = enclosure_prefix(p, &term1);
    std::vector<mpz_class> a2 = enclosure_prefix(p * 2, &term2);
    size_t common = 0;
    while (common < a1.size() && common < a2.size() && a1[common] == a2[common])
      ++common;
    bool complete = term1 && term2 && common == a1.size() && common == a2.size();
    if (common > quotients_.size() || complete) {
      quotients_.assign(a2.begin(), a2.begin() + static_cast<long>(common));
      terminated_ = complete;
      validate_quotients();
    }
  }

  // Rigorous prefix from one enclosure: common prefix of the exact expansions
  // of the two rational endpoints (equal endpoints: the full expansion).
  std::vector<mpz_class> enclosure_prefix(mpfr_prec_t p, bool* terminated) {
    *terminated = false;
    size_t cap = pass_cap(p);
    if (descriptor_.exact_rational) {
      const mpq_class& v = descriptor_.rational_value;
      return detail::rational_cf(v.get_num(), v.get_den(), cap, terminated);
    }
    Ball value = descriptor_.eval(p);
    mpq_class lo = value.lower_rational();
    mpq_class hi = value.upper_rational();
    bool tlo = false, thi = false;
    std::vector<mpz_class> alo =
        detail::rational_cf(lo.get_num(), lo.get_den(), cap, &tlo);
    if (lo == hi) {
      *terminated = tlo;
      return alo;
    }
    std::vector<mpz_class> ahi =
        detail::rational_cf(hi.get_num(), hi.get_den(), cap, &thi);
    size_t common = 0;
    while (common < alo.size() && common < ahi.size() && alo[common] == ahi[common])
      ++common;
    return {alo.begin(), alo.begin() + static_cast<long>(common)};
  }

  void validate_quotients() const {
    for (size_t i = 1; i < quotients_.size(); ++i)
      if (quotients_[i] < 1)
        throw std::logic_error("continued fraction: partial quotient < 1");
  }

  RealDescriptor descriptor_;
  mpfr_prec_t precision_;
  mpfr_prec_t ceiling_;
  std::vector<mpz_class> quotients_;
  bool terminated_ = false;
};

inline std::vector<Convergent> convergents(const ContinuedFraction& cf) {
  return cf.convergents();
}

// Distance from x to the nearest integer, as a certified enclosure in
// [0, 1/2]. Wide inputs that may span a half-integer fold conservatively.
inline Ball nearest_int_distance(const Ball& x) {
  mpfr_prec_t p = x.precision();
  mpz_class z = x.nearest_integer();
  Ball d = abs(x - Ball::from_integer(z, p));
  Ball half = Ball::from_rational(1, 2, p);
  if (d.less_equal(half) == Verdict::holds) return d;
  // Enclosure reaches past 1/2, so it may span a half-integer peak of the
  // distance function; [0, 1/2] is the only enclosure that stays rigorous.
  return Ball::from_endpoints(mpq_class(0), mpq_class(1, 2), p);
}

struct LegendreWindow {
  long index_low;     // q_{index_low} <= M
  long index_high;    // M < q_{index_high}
  mpz_class q_low;
  mpz_class q_high;
  mpz_class b_max;    // max partial quotient over a_1 .. a_{index_high + 2}
};

// Bracket M between consecutive convergent denominators and report the
// maximum partial quotient over the window used by the degenerate branch:
// for any 0 < k <= M, |k tau - m| > 1 / ((b_max + 2) q) with q <= M.
inline LegendreWindow legendre_partial_quotient_bound(ContinuedFraction& cf,
                                                      const mpz_class& M) {
  if (M < 1)
    throw std::invalid_argument("legendre_partial_quotient_bound: M must be >= 1");
  Convergent above = cf.first_denominator_exceeding(M);
  if (above.index == 0)
    throw std::runtime_error("legendre_partial_quotient_bound: q_0 already exceeds M");
  long window_top = above.index + 2;
  cf.ensure(window_top + 1);
  std::vector<Convergent> cs = cf.convergents(above.index + 1);
  mpz_class b = 0;
  const std::vector<mpz_class>& a = cf.quotients();
  for (long i = 1; i <= window_top && i < static_cast<long>(a.size()); ++i)
    if (a[static_cast<size_t>(i)] > b) b = a[static_cast<size_t>(i)];
  return {above.index - 1, above.index, cs[static_cast<size_t>(above.index - 1)].q,
          above.q, b};
}

}  // namespace diocert
