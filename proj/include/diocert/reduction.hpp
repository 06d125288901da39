#pragma once

// Dujella-Petho reduction: given tau, mu, A > 0, B > 1 and a cap M, pick a
// convergent p/q of tau with q > 6M; if eps = ||mu q|| - M ||tau q|| > 0
// (certified), every solution of 0 < |k tau - m + mu| < A / B^w with k <= M
// has w < log(A q / eps) / log B. When eps fails to certify positive the
// search advances through later convergents up to a configured horizon.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diocert/ball.hpp"
#include "diocert/contfrac.hpp"
#include "diocert/sequences.hpp"

namespace diocert {

struct ReductionInstance {
  RealDescriptor tau;
  RealDescriptor mu;
  Ball A;
  Ball B;
  mpz_class M;
};

enum class ReduceStatus { ok, epsilon_nonpositive };

inline const char* to_string(ReduceStatus s) {
  return s == ReduceStatus::ok ? "ok" : "epsilon_nonpositive";
}

struct ReducedBound {
  Convergent convergent_used;
  Ball epsilon;
  long omega_bound = -1;  // meaningful when status == ok
  ReduceStatus status = ReduceStatus::epsilon_nonpositive;
  long t = 0;             // family slot, 0 outside reduce_family
};

// Single reduction. `tau_cf` is the shared expansion of the instance's tau;
// mu is evaluated at the expansion's working precision.
inline ReducedBound reduce_once(ContinuedFraction& tau_cf,
                                const ReductionInstance& inst,
                                long horizon = 40) {
  if (inst.M < 1) throw std::invalid_argument("reduce_once: M must be >= 1");
  if (!require_decided(inst.A.is_positive(), "A > 0") ||
      !require_decided(Ball::one(inst.B.precision()).less_than(inst.B), "B > 1"))
    throw std::invalid_argument("reduce_once: need A > 0 and B > 1");
  if (horizon < 0) throw std::invalid_argument("reduce_once: bad horizon");

  Convergent first = tau_cf.first_denominator_exceeding(6 * inst.M);
  mpfr_prec_t p = tau_cf.precision_bits();
  Ball tau_val = inst.tau.eval(p);
  Ball mu_val = inst.mu.eval(p);
  Ball m_ball = Ball::from_integer(inst.M, p);

  ReducedBound last;
  for (long off = 0; off <= horizon; ++off) {
    Convergent c = tau_cf.convergent(first.index + off);
    Ball qb = Ball::from_integer(c.q, p);
    Ball eps = nearest_int_distance(mu_val * qb) -
               m_ball * nearest_int_distance(tau_val * qb);
    last = ReducedBound{c, eps, -1, ReduceStatus::epsilon_nonpositive, 0};
    if (eps.is_positive() == Verdict::holds) {
      Ball w = log(inst.A * qb / eps) / log(inst.B);
      mpfr_t f;
      mpfr_init2(f, 64);
      mpfr_floor(f, w.upper_raw());
      long omega = mpfr_get_si(f, MPFR_RNDD);
      mpfr_clear(f);
      last.omega_bound = omega;
      last.status = ReduceStatus::ok;
      return last;
    }
  }
  return last;  // epsilon never certified positive within the horizon
}

struct FamilyResult {
  std::vector<ReducedBound> per_t;
  long max_ok_bound = -1;
  std::vector<long> failed_t;
};

// Family over t = n - m = 1..t_max with mu_t = log(c/(1+2^-t))/log 2,
// c = 3a (Padovan) or 3 (Perrin). The Perrin t = 1 slot degenerates to
// mu = 1 exactly and must come back epsilon_nonpositive.
inline FamilyResult reduce_family(ContinuedFraction& tau_cf, Problem problem,
                                  long t_max, const Ball& A, const Ball& B,
                                  const mpz_class& M, long horizon = 40) {
  if (t_max < 0) throw std::invalid_argument("reduce_family: t_max must be >= 0");
  FamilyResult out;
  out.per_t.reserve(static_cast<size_t>(t_max));
  for (long t = 1; t <= t_max; ++t) {
    RealDescriptor mu = problem == Problem::padovan ? mu_padovan_t(t)
                                                    : mu_perrin_t(t);
    ReducedBound r = reduce_once(tau_cf, {tau_cf.descriptor(), mu, A, B, M},
                                 horizon);
    r.t = t;
    if (r.status == ReduceStatus::ok) {
      if (r.omega_bound > out.max_ok_bound) out.max_ok_bound = r.omega_bound;
    } else {
      out.failed_t.push_back(t);
    }
    out.per_t.push_back(std::move(r));
  }
  return out;
}

// Largest m >= 0 with 2^m < x (0 when x <= 2, a vacuous range).
inline long largest_pow2_exponent_below(const mpz_class& x) {
  if (x <= 2) return 0;
  // bit length of x-1 minus 1: 2^(L-1) <= x-1 < 2^L, and 2^(L-1) < x.
  size_t bits = mpz_sizeinbase(mpz_class(x - 1).get_mpz_t(), 2);
  return static_cast<long>(bits) - 1;
}

struct LegendreBranch {
  LegendreWindow window;
  mpz_class combined;  // 12 * (b_max + 2) * M
  long m_bound;
};

// Degenerate n - m = 1 branch: R_k = 2^m forces |k tau - m| < 12 / 2^m, and
// m/k must be a convergent of tau (Legendre). For k <= M the convergent
// lower bound gives 2^m < 12 (b_max + 2) M.
inline LegendreBranch legendre_branch(ContinuedFraction& tau_cf,
                                      const mpz_class& M) {
  if (M < 2) throw std::invalid_argument("legendre_branch: M must be >= 2");
  LegendreWindow w = legendre_partial_quotient_bound(tau_cf, M);
  mpz_class combined = 12 * (w.b_max + 2) * M;
  return {w, combined, largest_pow2_exponent_below(combined)};
}

}  // namespace diocert
