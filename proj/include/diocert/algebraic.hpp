#pragma once

// The root system of x^3 - x - 1 and everything the proof pipeline derives
// from it. alpha (the plastic number) is isolated two independent ways — by
// dyadic bisection with exact integer sign evaluation, and by the radical
// formula alpha = (cbrt(108 + 12 sqrt(69)) + cbrt(108 - 12 sqrt(69))) / 6 —
// and the context construction fails unless the two enclosures intersect.
//
// The complex roots beta, gamma are never materialized; every downstream
// inequality consumes only |beta| = alpha^(-1/2). Likewise the Binet
// coefficient a = alpha (alpha + 1) / (3 alpha^2 - 1) is real and its
// conjugates enter only through |b| = |c| = sqrt(1/(23 a)).

#include <gmpxx.h>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diocert/ball.hpp"
#include "diocert/sequences.hpp"

namespace diocert {

// Bisection on dyadic rationals with an exact integer sign oracle.
// sign_at(v, s) must return the sign of f(v / 2^s) for the polynomial being
// isolated. Requires a sign change over [lo0, hi0].
inline Ball isolate_root(const std::function<int(const mpz_class&, long)>& sign_at,
                         long lo0, long hi0, mpfr_prec_t prec) {
  long scale = static_cast<long>(prec) + 8;
  mpz_class lo(lo0), hi(hi0);
  mpz_class one_shift;
  mpz_ui_pow_ui(one_shift.get_mpz_t(), 2, static_cast<unsigned long>(scale));
  lo *= one_shift;
  hi *= one_shift;
  int slo = sign_at(lo, scale);
  int shi = sign_at(hi, scale);
  if (slo == 0 || shi == 0 || slo == shi)
    throw std::invalid_argument("isolate_root: no sign change on initial interval");
  // Bisect until hi - lo == 1 at the working scale (width 2^-(prec+8)).
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) >> 1;
    int sm = sign_at(mid, scale);
    if (sm == 0) {
      lo = mid - 1;
      hi = mid + 1;
      break;
    }
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
  }
  mpz_class den = one_shift;
  mpq_class qlo(lo, den), qhi(hi, den);
  qlo.canonicalize();
  qhi.canonicalize();
  return Ball::from_endpoints(qlo, qhi, prec);
}

namespace detail {

// sign of x^3 - x - 1 at x = v / 2^s, computed exactly in integers:
// v^3 - v 4^s - 8^s (scaled by 8^s).
inline int psi_sign(const mpz_class& v, long s) {
  mpz_class four_s, eight_s;
  mpz_ui_pow_ui(four_s.get_mpz_t(), 4, static_cast<unsigned long>(s));
  mpz_ui_pow_ui(eight_s.get_mpz_t(), 8, static_cast<unsigned long>(s));
  mpz_class r = v * v * v - v * four_s - eight_s;
  return mpz_sgn(r.get_mpz_t());
}

// sign of 23 x^3 - 23 x^2 + 6 x - 1 at x = v / 2^s (scaled by 8^s).
inline int binet_a_minpoly_sign(const mpz_class& v, long s) {
  mpz_class two_s, four_s, eight_s;
  mpz_ui_pow_ui(two_s.get_mpz_t(), 2, static_cast<unsigned long>(s));
  four_s = two_s * two_s;
  eight_s = four_s * two_s;
  mpz_class r = 23 * v * v * v - 23 * v * v * two_s + 6 * v * four_s - eight_s;
  return mpz_sgn(r.get_mpz_t());
}

}  // namespace detail

struct AlgebraicContext {
  mpfr_prec_t precision_bits;
  Ball alpha;      // unique real root of x^3 - x - 1
  Ball beta_abs;   // |beta| = |gamma| = alpha^(-1/2)
  Ball binet_a;    // Padovan Binet coefficient, real root of 23x^3-23x^2+6x-1
  Ball b_abs;      // |b| = |c| = sqrt(1 / (23 a))
  Ball log_alpha;
  Ball log2;
  Ball log3;
};

inline AlgebraicContext make_context(mpfr_prec_t precision_bits) {
  if (precision_bits < 64)
    throw std::invalid_argument("make_context: need at least 64 bits");
  mpfr_prec_t p = precision_bits;

  Ball alpha_bisect = isolate_root(detail::psi_sign, 1, 2, p);

  // Radical route (Cardano form of the real root).
  Ball s69 = sqrt(Ball::from_long(69, p));
  Ball r1 = cbrt(Ball::from_long(108, p) + Ball::from_long(12, p) * s69);
  Ball r2 = cbrt(Ball::from_long(108, p) - Ball::from_long(12, p) * s69);
  Ball alpha_radical = (r1 + r2) / Ball::from_long(6, p);

  if (!alpha_bisect.overlaps(alpha_radical))
    throw std::runtime_error(
        "make_context: bisection and radical enclosures of alpha disagree");

  AlgebraicContext ctx{
      p, alpha_bisect, Ball(p), Ball(p), Ball(p), Ball(p), Ball(p), Ball(p)};

  ctx.beta_abs = Ball::one(p) / sqrt(ctx.alpha);

  // a = alpha (alpha + 1) / (3 alpha^2 - 1), cross-validated against its
  // minimal polynomial by independent bisection.
  Ball three(Ball::from_long(3, p));
  Ball a_formula = ctx.alpha * (ctx.alpha + Ball::one(p)) /
                   (three * ctx.alpha * ctx.alpha - Ball::one(p));
  Ball a_bisect = isolate_root(detail::binet_a_minpoly_sign, 0, 1, p);
  if (!a_formula.overlaps(a_bisect))
    throw std::runtime_error(
        "make_context: Binet coefficient enclosures disagree");
  ctx.binet_a = a_formula;

  ctx.b_abs = sqrt(Ball::one(p) / (Ball::from_long(23, p) * ctx.binet_a));
  ctx.log_alpha = log(ctx.alpha);
  ctx.log2 = log(Ball::from_long(2, p));
  ctx.log3 = log(three);

  // Envelope checks: 1.32 < alpha < 1.33, 0.86 < |beta| < 0.87,
  // 0.72 < a < 0.73, 0.24 < |b| < 0.25.
  auto in_band = [&](const Ball& x, long lo_c, long hi_c) {
    Ball lo = Ball::from_rational(lo_c, 100, p);
    Ball hi = Ball::from_rational(hi_c, 100, p);
    return require_decided(lo.less_than(x), "envelope lower") &&
           require_decided(x.less_than(hi), "envelope upper");
  };
  if (!in_band(ctx.alpha, 132, 133) || !in_band(ctx.beta_abs, 86, 87) ||
      !in_band(ctx.binet_a, 72, 73) || !in_band(ctx.b_abs, 24, 25))
    throw std::runtime_error("make_context: envelope check failed");

  return ctx;
}

// Context cache keyed by precision (contexts are immutable once built).
inline const AlgebraicContext& shared_context(mpfr_prec_t precision_bits) {
  static std::mutex mu;
  static std::map<mpfr_prec_t, std::unique_ptr<AlgebraicContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[precision_bits];
  if (!slot) slot = std::make_unique<AlgebraicContext>(make_context(precision_bits));
  return *slot;
}

// a * alpha^k with the residual guarantee |P_k - a alpha^k| < alpha^(-k/2)
// checked as a certified inequality.
inline Ball binet_padovan(const AlgebraicContext& ctx, long k) {
  if (k < 1) throw std::invalid_argument("binet_padovan: k must be >= 1");
  Ball value = ctx.binet_a * pow_ui(ctx.alpha, static_cast<unsigned long>(k));
  Ball residual = abs(Ball::from_integer(term(SequenceKind::padovan, k),
                                         ctx.precision_bits) -
                      value);
  Ball bound = pow_ui(ctx.beta_abs, static_cast<unsigned long>(k));
  if (!require_decided(residual.less_than(bound), "Padovan Binet residual"))
    throw std::runtime_error("binet_padovan: residual bound failed");
  return value;
}

// alpha^k with the residual guarantee |R_k - alpha^k| <= 2 |beta|^k.
inline Ball binet_perrin(const AlgebraicContext& ctx, long k) {
  if (k < 0) throw std::invalid_argument("binet_perrin: k must be >= 0");
  Ball value = pow_ui(ctx.alpha, static_cast<unsigned long>(k));
  Ball residual = abs(Ball::from_integer(term(SequenceKind::perrin, k),
                                         ctx.precision_bits) -
                      value);
  Ball bound = Ball::from_long(2, ctx.precision_bits) *
               pow_ui(ctx.beta_abs, static_cast<unsigned long>(k));
  if (!require_decided(residual.less_equal(bound), "Perrin Binet residual"))
    throw std::runtime_error("binet_perrin: residual bound failed");
  return value;
}

// ---- logarithmic heights -------------------------------------------------
//
// Closed-form heights for the handful of algebraic numbers the pipeline
// needs, plus the three standard composition bounds:
//   h(x y) <= h(x) + h(y),  h(x/y) <= h(x) + h(y),
//   h(x + y) <= h(x) + h(y) + log 2,  h(x^s) = |s| h(x).

class HeightExpr {
 public:
  static HeightExpr rational(mpz_class num, mpz_class den) {
    if (den == 0) throw std::invalid_argument("HeightExpr: zero denominator");
    HeightExpr e(Kind::rational);
    if (den < 0) {
      num = -num;
      den = -den;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    e.num_ = num / g;
    e.den_ = den / g;
    return e;
  }
  static HeightExpr integer(long v) { return rational(mpz_class(v), 1); }
  static HeightExpr alpha() { return HeightExpr(Kind::alpha); }
  static HeightExpr binet_a() { return HeightExpr(Kind::binet_a); }
  static HeightExpr product(HeightExpr a, HeightExpr b) {
    return compose(Kind::product, std::move(a), std::move(b));
  }
  static HeightExpr quotient(HeightExpr a, HeightExpr b) {
    return compose(Kind::quotient, std::move(a), std::move(b));
  }
  static HeightExpr sum(HeightExpr a, HeightExpr b) {
    return compose(Kind::sum, std::move(a), std::move(b));
  }
  static HeightExpr power(HeightExpr base, long exponent) {
    HeightExpr e(Kind::power);
    e.children_.push_back(std::move(base));
    e.exponent_ = exponent;
    return e;
  }

  Ball height(const AlgebraicContext& ctx) const {
    mpfr_prec_t p = ctx.precision_bits;
    switch (kind_) {
      case Kind::rational: {
        if (num_ == 0) throw std::domain_error("height of zero");
        mpz_class m = abs(num_) > den_ ? abs(num_) : den_;
        return log(Ball::from_integer(m, p));
      }
      case Kind::alpha:
        // h(alpha) = (1/3) log alpha: minimal polynomial x^3 - x - 1 has
        // leading coefficient 1 and conjugates |beta| = |gamma| < 1.
        return ctx.log_alpha / Ball::from_long(3, p);
      case Kind::binet_a:
        // h(a) = (1/3) log 23: leading coefficient 23, all roots < 1.
        return log(Ball::from_long(23, p)) / Ball::from_long(3, p);
      case Kind::product:
      case Kind::quotient:
        return children_[0].height(ctx) + children_[1].height(ctx);
      case Kind::sum:
        return children_[0].height(ctx) + children_[1].height(ctx) + ctx.log2;
      case Kind::power: {
        long s = exponent_ < 0 ? -exponent_ : exponent_;
        return Ball::from_long(s, p) * children_[0].height(ctx);
      }
    }
    throw std::logic_error("HeightExpr: bad kind");
  }

 private:
  enum class Kind { rational, alpha, binet_a, product, quotient, sum, power };

  explicit HeightExpr(Kind k) : kind_(k) {}

  static HeightExpr compose(Kind k, HeightExpr a, HeightExpr b) {
    HeightExpr e(k);
    e.children_.push_back(std::move(a));
    e.children_.push_back(std::move(b));
    return e;
  }

  Kind kind_;
  std::vector<HeightExpr> children_;
  mpz_class num_, den_;
  long exponent_ = 0;
};

inline Ball log_height(const AlgebraicContext& ctx, const HeightExpr& e) {
  return e.height(ctx);
}

// ---- growth-bound validation ----------------------------------------------
//
// Certified two-sided growth bounds:
//   Padovan    alpha^(k-3) <= P_k <= alpha^(k-1)   (k >= 1)
//   Jacobsthal 2^(n-2)    <= J_n <= 2^(n-1)        (n >= 1, exact integers)
//   Perrin     alpha^(k-2) <= R_k <= alpha^(k+1)   (k >= 2)
// A `true` verdict is rigorous (outward rounding); `false` means the bound
// could not be certified — for Padovan k = 3 it genuinely fails
// (P_3 = 2 > alpha^2).

inline std::vector<std::pair<long, bool>> check_growth(
    const AlgebraicContext& ctx, SequenceKind kind, long first, long last) {
  long min_index = kind == SequenceKind::perrin ? 2 : 1;
  if (first < min_index)
    throw std::invalid_argument("check_growth: range below validity threshold");
  if (last < first) throw std::invalid_argument("check_growth: empty range");

  std::vector<std::pair<long, bool>> out;
  out.reserve(static_cast<size_t>(last - first + 1));
  for (long i = first; i <= last; ++i) {
    bool ok = false;
    const mpz_class& v = term(kind, i);
    if (kind == SequenceKind::jacobsthal) {
      // 2^(n-2) <= J_n <= 2^(n-1), cleared of fractions: 2^n <= 4 J_n.
      mpz_class pow_n, pow_nm1;
      mpz_ui_pow_ui(pow_n.get_mpz_t(), 2, static_cast<unsigned long>(i));
      pow_nm1 = pow_n >> 1;
      ok = (pow_n <= 4 * v) && (v <= pow_nm1);
    } else {
      long lo_exp = kind == SequenceKind::padovan ? i - 3 : i - 2;
      long hi_exp = kind == SequenceKind::padovan ? i - 1 : i + 1;
      Ball lo_pow = pow_si(ctx.alpha, lo_exp);
      Ball hi_pow = pow_si(ctx.alpha, hi_exp);
      Ball val = Ball::from_integer(v, ctx.precision_bits);
      ok = lo_pow.less_equal(val) == Verdict::holds &&
           val.less_equal(hi_pow) == Verdict::holds;
    }
    out.emplace_back(i, ok);
  }
  return out;
}

}  // namespace diocert
