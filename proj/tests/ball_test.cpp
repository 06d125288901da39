#include "diocert/ball.hpp"

#include <gtest/gtest.h>

#include "diocert/contfrac.hpp"

namespace diocert {
namespace {

TEST(Ball, ExactConstructionAndContainment) {
  Ball b = Ball::from_long(7, 128);
  EXPECT_TRUE(b.is_exact());
  EXPECT_TRUE(b.contains(mpq_class(7)));
  EXPECT_FALSE(b.contains(mpq_class(8)));

  Ball q = Ball::from_rational(1, 3, 128);
  EXPECT_FALSE(q.is_exact());  // 1/3 is not dyadic
  EXPECT_TRUE(q.contains(mpq_class(1, 3)));

  Ball dyadic = Ball::from_rational(3, 8, 128);
  EXPECT_TRUE(dyadic.is_exact());
}

TEST(Ball, ArithmeticEnclosesExactRationals) {
  mpfr_prec_t p = 128;
  Ball a = Ball::from_rational(1, 3, p);
  Ball b = Ball::from_rational(1, 7, p);
  EXPECT_TRUE((a + b).contains(mpq_class(10, 21)));
  EXPECT_TRUE((a - b).contains(mpq_class(4, 21)));
  EXPECT_TRUE((a * b).contains(mpq_class(1, 21)));
  EXPECT_TRUE((a / b).contains(mpq_class(7, 3)));
  EXPECT_TRUE((-a).contains(mpq_class(-1, 3)));
  EXPECT_TRUE(abs(-a).contains(mpq_class(1, 3)));
}

TEST(Ball, MulSignCases) {
  mpfr_prec_t p = 64;
  Ball neg = Ball::from_long(-3, p);
  Ball pos = Ball::from_long(5, p);
  Ball straddle = Ball::from_endpoints(mpq_class(-1), mpq_class(2), p);
  EXPECT_TRUE((neg * pos).contains(mpq_class(-15)));
  EXPECT_TRUE((neg * neg).contains(mpq_class(9)));
  EXPECT_TRUE((straddle * pos).contains(mpq_class(-5)));
  EXPECT_TRUE((straddle * pos).contains(mpq_class(10)));
  EXPECT_THROW(pos / straddle, std::domain_error);
}

TEST(Ball, PowCases) {
  mpfr_prec_t p = 96;
  Ball two = Ball::from_long(2, p);
  EXPECT_TRUE(pow_ui(two, 10).contains(mpq_class(1024)));
  EXPECT_TRUE(pow_ui(two, 0).is_exact());
  EXPECT_TRUE(pow_ui(two, 0).contains(mpq_class(1)));
  EXPECT_TRUE(pow_si(two, -3).contains(mpq_class(1, 8)));

  Ball neg = Ball::from_long(-2, p);
  EXPECT_TRUE(pow_ui(neg, 3).contains(mpq_class(-8)));
  EXPECT_TRUE(pow_ui(neg, 4).contains(mpq_class(16)));
  Ball straddle = Ball::from_endpoints(mpq_class(-2), mpq_class(1), p);
  Ball even = pow_ui(straddle, 2);
  EXPECT_TRUE(even.contains(mpq_class(0)));
  EXPECT_TRUE(even.contains(mpq_class(4)));

  EXPECT_TRUE(Ball::one(p).mul_2exp(-4).contains(mpq_class(1, 16)));
  EXPECT_TRUE(Ball::one(p).mul_2exp(-4).is_exact());
}

TEST(Ball, TranscendentalEnclosures) {
  mpfr_prec_t p = 256;
  Ball e1 = exp(Ball::one(p));
  Ball log_e = log(e1);
  // log(exp(1)) must enclose 1
  EXPECT_TRUE(log_e.contains(mpq_class(1)));
  EXPECT_TRUE(sqrt(Ball::from_long(4, p)).contains(mpq_class(2)));
  EXPECT_TRUE(cbrt(Ball::from_long(27, p)).contains(mpq_class(3)));
  EXPECT_TRUE(cbrt(Ball::from_long(-27, p)).contains(mpq_class(-3)));
  EXPECT_THROW(log(Ball::zero(p)), std::domain_error);
  EXPECT_THROW(sqrt(Ball::from_long(-1, p)), std::domain_error);
}

TEST(Ball, ThreeValuedComparisons) {
  mpfr_prec_t p = 64;
  Ball a = Ball::from_endpoints(mpq_class(1), mpq_class(2), p);
  Ball b = Ball::from_endpoints(mpq_class(3), mpq_class(4), p);
  Ball c = Ball::from_endpoints(mpq_class(3, 2), mpq_class(5, 2), p);
  EXPECT_EQ(a.less_than(b), Verdict::holds);
  EXPECT_EQ(b.less_than(a), Verdict::fails);
  EXPECT_EQ(a.less_than(c), Verdict::undecided);
  EXPECT_EQ(a.is_positive(), Verdict::holds);
  EXPECT_EQ((-b).is_positive(), Verdict::fails);
  EXPECT_EQ(Ball::from_endpoints(mpq_class(-1), mpq_class(1), p).is_positive(),
            Verdict::undecided);
  EXPECT_THROW(require_decided(Verdict::undecided, "test"), precision_error);
  EXPECT_TRUE(require_decided(Verdict::holds, "test"));
  EXPECT_FALSE(require_decided(Verdict::fails, "test"));
}

TEST(Ball, ComparisonAgainstIntegers) {
  mpfr_prec_t p = 64;
  Ball a = Ball::from_endpoints(mpq_class(5, 2), mpq_class(11, 4), p);
  EXPECT_EQ(a.less_than(mpz_class(3)), Verdict::holds);
  EXPECT_EQ(a.less_than(mpz_class(2)), Verdict::fails);
  EXPECT_EQ(a.greater_equal(mpz_class(2)), Verdict::holds);
}

TEST(Ball, NearestInteger) {
  mpfr_prec_t p = 128;
  bool ambiguous = true;
  Ball x = Ball::from_rational(29, 10, p);
  EXPECT_EQ(x.nearest_integer(&ambiguous), mpz_class(3));
  EXPECT_FALSE(ambiguous);
  Ball half = Ball::from_rational(7, 2, p);  // 3.5 exactly
  half.nearest_integer(&ambiguous);
  EXPECT_TRUE(ambiguous);
}

TEST(Ball, NearestIntDistanceExamples) {
  mpfr_prec_t p = 128;
  // 0.3 -> 0.3
  Ball d1 = nearest_int_distance(Ball::from_rational(3, 10, p));
  EXPECT_TRUE(d1.contains(mpq_class(3, 10)));
  EXPECT_EQ(d1.less_than(Ball::from_rational(31, 100, p)), Verdict::holds);
  // 7.5 -> exactly 1/2 (boundary)
  Ball d2 = nearest_int_distance(Ball::from_rational(15, 2, p));
  EXPECT_TRUE(d2.contains(mpq_class(1, 2)));
  EXPECT_EQ(d2.less_than(Ball::from_rational(501, 1000, p)), Verdict::holds);
  // negative side folds onto the same distance
  Ball d3 = nearest_int_distance(Ball::from_rational(-17, 10, p));
  EXPECT_TRUE(d3.contains(mpq_class(3, 10)));
}

TEST(Ball, PrecisionEscalationTightens) {
  // The same quantity recomputed at doubled precision nests inside the
  // lower-precision enclosure.
  Ball wide = log(Ball::from_long(2, 128));
  Ball tight = log(Ball::from_long(2, 256));
  EXPECT_TRUE(tight.inside(wide));
  EXPECT_EQ(tight.width().less_than(wide.width()), Verdict::holds);
}

TEST(Ball, SerializationIsDeterministic) {
  Ball x = log(Ball::from_long(3, 256));
  EXPECT_EQ(x.midpoint_string(20), x.midpoint_string(20));
  EXPECT_EQ(x.radius_string(), x.radius_string());
  // log 3 = 1.0986...
  EXPECT_EQ(x.midpoint_string(6).substr(0, 6), "1.0986");
  EXPECT_GT(x.certified_decimal_digits(), 60);
}

TEST(Ball, RationalEndpointsRoundTrip) {
  Ball x = Ball::from_rational(22, 7, 128);
  mpq_class lo = x.lower_rational();
  mpq_class hi = x.upper_rational();
  EXPECT_LE(lo, mpq_class(22, 7));
  EXPECT_GE(hi, mpq_class(22, 7));
  EXPECT_LT(hi - lo, mpq_class(1, 1000000));
}

// Deterministic generator sweep: random-ish rational expression trees must
// always enclose their exact rational evaluation.
TEST(Ball, EnclosureProperty) {
  mpfr_prec_t p = 96;
  unsigned long state = 0x9e3779b97f4a7c15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int round = 0; round < 200; ++round) {
    long an = static_cast<long>(next() % 2001) - 1000;
    long ad = static_cast<long>(next() % 997) + 1;
    long bn = static_cast<long>(next() % 2001) - 1000;
    long bd = static_cast<long>(next() % 997) + 1;
    mpq_class qa(an, ad), qb(bn, bd);
    qa.canonicalize();
    qb.canonicalize();
    Ball a = Ball::from_rational(qa, p);
    Ball b = Ball::from_rational(qb, p);
    switch (next() % 4) {
      case 0:
        EXPECT_TRUE((a + b).contains(qa + qb));
        break;
      case 1:
        EXPECT_TRUE((a - b).contains(qa - qb));
        break;
      case 2:
        EXPECT_TRUE((a * b).contains(mpq_class(qa * qb)));
        break;
      default:
        if (qb != 0 && !b.contains_zero()) {
          EXPECT_TRUE((a / b).contains(mpq_class(qa / qb)));
        }
        break;
    }
    // exp(log(|a|+1)) encloses |a|+1
    mpq_class shifted = abs(qa) + 1;
    Ball sb = Ball::from_rational(shifted, p);
    EXPECT_TRUE(exp(log(sb)).contains(shifted));
  }
}

}  // namespace
}  // namespace diocert
