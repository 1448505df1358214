#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "powersum/decomposition.hpp"

namespace powersum {

/// Closed interval [lo, hi] with outward MPFR rounding; every result
/// encloses the exact value.
class RInterval {
public:
    explicit RInterval(mpfr_prec_t prec);
    RInterval(const RInterval&);
    RInterval(RInterval&&) noexcept;
    RInterval& operator=(RInterval);
    ~RInterval();

    static RInterval of_ui(unsigned long v, mpfr_prec_t prec);
    static RInterval of_mpz(const mpz_class& v, mpfr_prec_t prec);
    static RInterval of_mpq(const mpq_class& v, mpfr_prec_t prec);

    RInterval operator+(const RInterval&) const;
    RInterval operator-(const RInterval&) const;
    RInterval operator*(const RInterval&) const;
    RInterval operator/(const RInterval&) const;
    RInterval log() const;   // requires lo > 0
    RInterval exp() const;
    RInterval abs() const;
    RInterval square() const { return *this * *this; }

    /// True when the whole interval is below v (hi < v).
    bool certainly_less_than(const mpz_class& v) const;
    /// True when the upper end exceeds v (hi > v).
    bool upper_exceeds(const mpz_class& v) const;
    /// floor(lo) when floor(lo) == floor(hi); nullopt otherwise.
    std::optional<mpz_class> determinate_floor() const;
    mpz_class ceil_hi() const;

    double mid() const;
    mpfr_prec_t prec() const { return prec_; }

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
    friend RInterval make(mpfr_prec_t);
};

/// Per-k summary of the exponent bound chain.
struct BoundBreakdown {
    unsigned k = 0;
    u64 d1 = 0, d2 = 0;  // pair maximizing d1/d2 (the binding case)
    mpq_class A;         // 2^{k/2-1} (d1/d2)^{k/2}, exact
    mpq_class c1;        // 1.0051 d1 k (k/2-1) / d2, exact
    mpz_class X0;
    double n1 = 0;
    mpz_class n2;        // max over all nontrivial pairs
    double n3 = 0;
    double n4 = 0;
    unsigned m = 0;
    mpq_class C2;
    mpz_class n_ineq;    // largest n satisfying the final inequality
    mpz_class n0;        // max(n_ineq, floor(n4))
};

mpq_class compute_c1(unsigned k, const DecompositionPair& pair);
mpq_class compute_A(unsigned k, const DecompositionPair& pair);
double compute_n1(unsigned k);
mpz_class compute_n2(unsigned k, const DecompositionPair& pair, mpfr_prec_t prec = 128);
std::pair<double, double> compute_n3_n4(unsigned k, unsigned m);

/// Largest integer n satisfying n < RHS(n) (the final inequality), found by
/// doubling + binary search with upper-end rounding so the result is never
/// an underestimate.
mpz_class solve_upper_bound(unsigned k, const DecompositionPair& pair_worst, unsigned m,
                            const mpq_class& C2, mpfr_prec_t prec = 128);

/// Full chain with m = 10, C2 = 25.2 for k <= 66 and m = 12, C2 = 23.4 for
/// 70 <= k <= 98.  nullopt when k has no pair with d1 d2 > 1.
std::optional<BoundBreakdown> table_bound_n(unsigned k, mpfr_prec_t prec = 128);

}  // namespace powersum
