#pragma once

// Certified real arithmetic: every value is an interval [lo, hi] of MPFR
// numbers that is guaranteed to contain the true real. All operations round
// outward, so enclosures are rigorous; comparisons are three-valued and a
// caller that receives `undecided` must re-run at higher precision.
//
// Reports expose the midpoint-radius view (midpoint_string / radius_string);
// the enclosure invariant [mid - rad, mid + rad] ⊇ [lo, hi] is preserved by
// rounding the radius up.

#include <cstdio>  // before mpfr.h so the formatted-output prototypes exist

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace diocert {

enum class Verdict { holds, fails, undecided };

// Raised when a certified comparison cannot be decided at the precision in
// use and the operation's contract requires a decision.
class precision_error : public std::runtime_error {
 public:
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

class Ball {
 public:
  explicit Ball(mpfr_prec_t prec = 256) : prec_(check_prec(prec)) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }

  Ball(const Ball& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }

  Ball(Ball&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, MPFR_PREC_MIN);
    mpfr_init2(hi_, MPFR_PREC_MIN);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }

  Ball& operator=(const Ball& o) {
    if (this != &o) {
      Ball tmp(o);
      swap(tmp);
    }
    return *this;
  }

  Ball& operator=(Ball&& o) noexcept {
    swap(o);
    return *this;
  }

  ~Ball() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  void swap(Ball& o) noexcept {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }

  // ---- construction ----------------------------------------------------

  static Ball from_long(long v, mpfr_prec_t prec) {
    Ball r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
  }

  static Ball from_integer(const mpz_class& v, mpfr_prec_t prec) {
    Ball r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  static Ball from_rational(const mpq_class& v, mpfr_prec_t prec) {
    Ball r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static Ball from_rational(long num, long den, mpfr_prec_t prec) {
    return from_rational(mpq_class(num, den), prec);
  }

  // Exact dyadic endpoints given as rationals (used by root isolation).
  static Ball from_endpoints(const mpq_class& lo, const mpq_class& hi,
                             mpfr_prec_t prec) {
    if (lo > hi) throw std::invalid_argument("Ball: endpoints out of order");
    Ball r(prec);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static Ball zero(mpfr_prec_t prec) { return Ball(prec); }
  static Ball one(mpfr_prec_t prec) { return from_long(1, prec); }

  // ---- queries -----------------------------------------------------------

  mpfr_prec_t precision() const { return prec_; }
  bool is_exact() const { return mpfr_equal_p(lo_, hi_); }
  const __mpfr_struct* lower_raw() const { return lo_; }
  const __mpfr_struct* upper_raw() const { return hi_; }

  bool contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
  }

  bool contains(const mpq_class& v) const {
    return mpfr_cmp_q(lo_, v.get_mpq_t()) <= 0 &&
           mpfr_cmp_q(hi_, v.get_mpq_t()) >= 0;
  }

  // Exact rational endpoints (dyadic, since MPFR numbers are dyadic).
  mpq_class lower_rational() const { return to_rational(lo_); }
  mpq_class upper_rational() const { return to_rational(hi_); }

  double lower_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  // ---- arithmetic ----------------------------------------------------

  friend Ball operator+(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  friend Ball operator-(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }

  friend Ball operator-(const Ball& a) {
    Ball r(a.prec_);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }

  friend Ball operator*(const Ball& a, const Ball& b) {
    mpfr_prec_t p = std::max(a.prec_, b.prec_);
    Ball r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    // lo = min of the four corner products rounded down
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // hi = max of the four corner products rounded up
    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
  }

  friend Ball operator/(const Ball& a, const Ball& b) {
    if (b.contains_zero())
      throw std::domain_error("Ball division: denominator interval contains zero");
    mpfr_prec_t p = std::max(a.prec_, b.prec_);
    Ball r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
  }

  // Exact scaling by 2^e.
  Ball mul_2exp(long e) const {
    Ball r(*this);
    mpfr_mul_2si(r.lo_, r.lo_, e, MPFR_RNDD);
    mpfr_mul_2si(r.hi_, r.hi_, e, MPFR_RNDU);
    return r;
  }

  friend Ball abs(const Ball& a) {
    Ball r(a.prec_);
    if (mpfr_sgn(a.lo_) >= 0) return a;
    if (mpfr_sgn(a.hi_) <= 0) return -a;
    // straddles zero
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  friend Ball sqrt(const Ball& a) {
    if (mpfr_sgn(a.lo_) < 0)
      throw std::domain_error("Ball sqrt: interval extends below zero");
    Ball r(a.prec_);
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  friend Ball cbrt(const Ball& a) {
    Ball r(a.prec_);
    mpfr_cbrt(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_cbrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  friend Ball log(const Ball& a) {
    if (mpfr_sgn(a.lo_) <= 0)
      throw std::domain_error("Ball log: interval not certainly positive");
    Ball r(a.prec_);
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  friend Ball exp(const Ball& a) {
    Ball r(a.prec_);
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  friend Ball pow_ui(const Ball& a, unsigned long e) {
    if (e == 0) return one(a.prec_);
    Ball r(a.prec_);
    int slo = mpfr_sgn(a.lo_), shi = mpfr_sgn(a.hi_);
    if (slo >= 0) {  // monotone increasing
      mpfr_pow_ui(r.lo_, a.lo_, e, MPFR_RNDD);
      mpfr_pow_ui(r.hi_, a.hi_, e, MPFR_RNDU);
    } else if (shi <= 0) {
      if (e % 2 == 1) {  // odd: monotone increasing
        mpfr_pow_ui(r.lo_, a.lo_, e, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, a.hi_, e, MPFR_RNDU);
      } else {  // even on negatives: decreasing
        mpfr_pow_ui(r.lo_, a.hi_, e, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, a.lo_, e, MPFR_RNDU);
      }
    } else {  // straddles zero
      if (e % 2 == 1) {
        mpfr_pow_ui(r.lo_, a.lo_, e, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, a.hi_, e, MPFR_RNDU);
      } else {
        mpfr_set_zero(r.lo_, 1);
        mpfr_t t;
        mpfr_init2(t, a.prec_);
        mpfr_neg(t, a.lo_, MPFR_RNDU);
        mpfr_max(t, t, a.hi_, MPFR_RNDU);
        mpfr_pow_ui(r.hi_, t, e, MPFR_RNDU);
        mpfr_clear(t);
      }
    }
    return r;
  }

  friend Ball pow_si(const Ball& a, long e) {
    if (e >= 0) return pow_ui(a, static_cast<unsigned long>(e));
    return one(a.prec_) / pow_ui(a, static_cast<unsigned long>(-e));
  }

  // ---- three-valued comparisons --------------------------------------

  Verdict less_than(const Ball& o) const {
    if (mpfr_cmp(hi_, o.lo_) < 0) return Verdict::holds;
    if (mpfr_cmp(lo_, o.hi_) >= 0) return Verdict::fails;
    return Verdict::undecided;
  }

  Verdict less_equal(const Ball& o) const {
    if (mpfr_cmp(hi_, o.lo_) <= 0) return Verdict::holds;
    if (mpfr_cmp(lo_, o.hi_) > 0) return Verdict::fails;
    return Verdict::undecided;
  }

  Verdict greater_than(const Ball& o) const { return o.less_than(*this); }
  Verdict greater_equal(const Ball& o) const { return o.less_equal(*this); }

  Verdict is_positive() const {
    if (mpfr_sgn(lo_) > 0) return Verdict::holds;
    if (mpfr_sgn(hi_) <= 0) return Verdict::fails;
    return Verdict::undecided;
  }

  Verdict less_than(const mpz_class& v) const {
    if (mpfr_cmp_z(hi_, v.get_mpz_t()) < 0) return Verdict::holds;
    if (mpfr_cmp_z(lo_, v.get_mpz_t()) >= 0) return Verdict::fails;
    return Verdict::undecided;
  }

  Verdict greater_equal(const mpz_class& v) const {
    if (mpfr_cmp_z(lo_, v.get_mpz_t()) >= 0) return Verdict::holds;
    if (mpfr_cmp_z(hi_, v.get_mpz_t()) < 0) return Verdict::fails;
    return Verdict::undecided;
  }

  // True iff the two enclosures intersect (their values could be equal).
  bool overlaps(const Ball& o) const {
    return mpfr_cmp(hi_, o.lo_) >= 0 && mpfr_cmp(o.hi_, lo_) >= 0;
  }

  // True iff this enclosure lies inside o (used by precision-escalation tests).
  bool inside(const Ball& o) const {
    return mpfr_cmp(o.lo_, lo_) <= 0 && mpfr_cmp(hi_, o.hi_) <= 0;
  }

  // ---- midpoint / radius view --------------------------------------------

  // Nearest integer to the midpoint. `ambiguous` is set when the enclosure
  // does not certify a unique nearest integer (distance could reach 1/2).
  mpz_class nearest_integer(bool* ambiguous = nullptr) const {
    mpfr_t mid;
    mpfr_init2(mid, prec_ + 2);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), mid, MPFR_RNDN);
    mpfr_clear(mid);
    if (ambiguous) {
      mpfr_t b;
      mpfr_init2(b, prec_ + 2);
      mpfr_set_z(b, z.get_mpz_t(), MPFR_RNDN);
      mpfr_add_d(b, b, 0.5, MPFR_RNDN);  // exact: z + 1/2 is dyadic
      bool hi_ok = mpfr_cmp(hi_, b) < 0;
      mpfr_sub_ui(b, b, 1, MPFR_RNDN);  // z - 1/2
      bool lo_ok = mpfr_cmp(lo_, b) > 0;
      *ambiguous = !(hi_ok && lo_ok);
      mpfr_clear(b);
    }
    return z;
  }

  std::string midpoint_string(int sig_digits = 40) const {
    mpfr_t mid;
    mpfr_init2(mid, prec_ + 2);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    std::string s = format(mid, sig_digits);
    mpfr_clear(mid);
    return s;
  }

  std::string radius_string() const {
    mpfr_t mid, rad, t;
    mpfr_init2(mid, prec_ + 2);
    mpfr_init2(rad, 64);
    mpfr_init2(t, 64);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    mpfr_sub(rad, hi_, mid, MPFR_RNDU);
    mpfr_sub(t, mid, lo_, MPFR_RNDU);
    mpfr_max(rad, rad, t, MPFR_RNDU);
    if (mpfr_sgn(rad) < 0) mpfr_set_zero(rad, 1);
    std::string s = format(rad, 3);
    mpfr_clear(mid);
    mpfr_clear(rad);
    mpfr_clear(t);
    return s;
  }

  // Width hi - lo as a ball (upper bound honest).
  Ball width() const {
    Ball r(64);
    mpfr_sub(r.lo_, hi_, lo_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
    return r;
  }

  // Number of decimal digits of the midpoint certified by the radius
  // (0 when the enclosure is too wide to pin the leading digit).
  long certified_decimal_digits() const {
    if (is_exact()) return 1000;  // exact values: report a large sentinel
    mpfr_t w, m;
    mpfr_init2(w, 64);
    mpfr_init2(m, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_abs(m, lo_, MPFR_RNDD);
    long digits = 0;
    if (mpfr_sgn(w) > 0 && mpfr_sgn(m) > 0) {
      mpfr_div(w, w, m, MPFR_RNDU);   // relative width
      mpfr_log10(w, w, MPFR_RNDU);
      double d = -mpfr_get_d(w, MPFR_RNDD);
      digits = d > 1 ? static_cast<long>(d) - 1 : 0;
    }
    mpfr_clear(w);
    mpfr_clear(m);
    return digits;
  }

 private:
  static mpfr_prec_t check_prec(mpfr_prec_t p) {
    if (p < MPFR_PREC_MIN) throw std::invalid_argument("Ball: precision too small");
    return p;
  }

  static mpq_class to_rational(const mpfr_t x) {
    if (mpfr_zero_p(x)) return mpq_class(0);
    if (!mpfr_number_p(x)) throw std::domain_error("Ball: non-finite endpoint");
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    mpq_class q(m);
    if (e >= 0) {
      mpz_class s;
      mpz_mul_2exp(s.get_mpz_t(), q.get_num().get_mpz_t(), e);
      q = mpq_class(s);
    } else {
      mpz_class d(1);
      mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), -e);
      q = mpq_class(m, d);
      q.canonicalize();
    }
    return q;
  }

  static std::string format(const mpfr_t x, int sig_digits) {
    char* out = nullptr;
    mpfr_asprintf(&out, "%.*Re", sig_digits - 1, x);
    std::string s(out);
    mpfr_free_str(out);
    return s;
  }

  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    default: return "undecided";
  }
}

// Throwing helper for contexts where an inequality must be decided.
inline bool require_decided(Verdict v, const char* what) {
  if (v == Verdict::undecided) throw precision_error(std::string("undecided: ") + what);
  return v == Verdict::holds;
}

}  // namespace diocert
