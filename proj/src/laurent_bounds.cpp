#include "powersum/laurent_bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "powersum/polynomial_core.hpp"

namespace powersum {

RInterval::RInterval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RInterval::RInterval(const RInterval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RInterval::RInterval(RInterval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

RInterval& RInterval::operator=(RInterval o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

RInterval::~RInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

RInterval RInterval::of_ui(unsigned long v, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_ui(r.lo_, v, MPFR_RNDD);
    mpfr_set_ui(r.hi_, v, MPFR_RNDU);
    return r;
}

RInterval RInterval::of_mpz(const mpz_class& v, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

RInterval RInterval::of_mpq(const mpq_class& v, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

RInterval RInterval::operator+(const RInterval& o) const {
    RInterval r(prec_);
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::operator-(const RInterval& o) const {
    RInterval r(prec_);
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

RInterval RInterval::operator*(const RInterval& o) const {
    RInterval r(prec_);
    mpfr_t c;
    mpfr_init2(c, prec_);
    const mpfr_srcptr xs[2] = {lo_, hi_};
    const mpfr_srcptr ys[2] = {o.lo_, o.hi_};
    bool first = true;
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_mul(c, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(c, r.lo_) < 0) mpfr_set(r.lo_, c, MPFR_RNDD);
            mpfr_mul(c, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(c, r.hi_) > 0) mpfr_set(r.hi_, c, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(c);
    return r;
}

RInterval RInterval::operator/(const RInterval& o) const {
    if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0)
        throw std::domain_error("RInterval: division by interval containing zero");
    RInterval r(prec_);
    mpfr_t c;
    mpfr_init2(c, prec_);
    const mpfr_srcptr xs[2] = {lo_, hi_};
    const mpfr_srcptr ys[2] = {o.lo_, o.hi_};
    bool first = true;
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_div(c, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(c, r.lo_) < 0) mpfr_set(r.lo_, c, MPFR_RNDD);
            mpfr_div(c, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(c, r.hi_) > 0) mpfr_set(r.hi_, c, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(c);
    return r;
}

RInterval RInterval::log() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("RInterval: log of nonpositive interval");
    RInterval r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::exp() const {
    RInterval r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::abs() const {
    RInterval r(prec_);
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) {
        mpfr_neg(r.lo_, hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        return r;
    }
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    mpfr_t c;
    mpfr_init2(c, prec_);
    mpfr_set(c, hi_, MPFR_RNDU);
    if (mpfr_cmp(c, r.hi_) > 0) mpfr_set(r.hi_, c, MPFR_RNDU);
    mpfr_clear(c);
    return r;
}

bool RInterval::certainly_less_than(const mpz_class& v) const {
    return mpfr_cmp_z(hi_, v.get_mpz_t()) < 0;
}

bool RInterval::upper_exceeds(const mpz_class& v) const {
    return mpfr_cmp_z(hi_, v.get_mpz_t()) > 0;
}

std::optional<mpz_class> RInterval::determinate_floor() const {
    mpz_class flo, fhi;
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_floor(t, lo_);
    mpfr_get_z(flo.get_mpz_t(), t, MPFR_RNDD);
    mpfr_floor(t, hi_);
    mpfr_get_z(fhi.get_mpz_t(), t, MPFR_RNDD);
    mpfr_clear(t);
    if (flo == fhi) return flo;
    return std::nullopt;
}

mpz_class RInterval::ceil_hi() const {
    mpz_class v;
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_ceil(t, hi_);
    mpfr_get_z(v.get_mpz_t(), t, MPFR_RNDU);
    mpfr_clear(t);
    return v;
}

double RInterval::mid() const {
    double a = mpfr_get_d(lo_, MPFR_RNDN);
    double b = mpfr_get_d(hi_, MPFR_RNDN);
    return (a + b) / 2;
}

namespace {

void require_pair(unsigned k, const DecompositionPair& pair) {
    if (pair.k != k) throw std::invalid_argument("pair does not belong to k");
}

mpq_class pow_q(const mpq_class& b, unsigned e) {
    mpq_class r(1);
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

RInterval log_q(const mpq_class& v, mpfr_prec_t prec) {
    return RInterval::of_mpq(v, prec).log();
}

}  // namespace

mpq_class compute_c1(unsigned k, const DecompositionPair& pair) {
    require_pair(k, pair);
    mpq_class r(10051, 10000);
    r *= mpq_class((long)pair.d1 * k * (k / 2 - 1), (long)pair.d2);
    r.canonicalize();
    return r;
}

mpq_class compute_A(unsigned k, const DecompositionPair& pair) {
    require_pair(k, pair);
    mpq_class half_pow = pow_q(mpq_class((long)pair.d1, (long)pair.d2), k / 2);
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, k / 2 - 1);
    mpq_class r = mpq_class(two_pow) * half_pow;
    r.canonicalize();
    return r;
}

double compute_n1(unsigned k) {
    if (!valid_exponent(k)) throw std::invalid_argument("compute_n1: invalid k");
    const mpfr_prec_t prec = 128;
    mpz_class X0 = shifted_tail(k).X0;
    mpq_class arg(mpz_class(k) * X0, 4);
    arg.canonicalize();
    RInterval v = log_q(arg, prec) / log_q(mpq_class(3), prec);
    return v.mid();
}

mpz_class compute_n2(unsigned k, const DecompositionPair& pair, mpfr_prec_t prec) {
    mpq_class c1 = compute_c1(k, pair);
    mpq_class A = compute_A(k, pair);
    if (A == 1) throw std::invalid_argument("compute_n2: A = 1");
    for (;; prec *= 2) {
        if (prec > 4096) throw std::runtime_error("compute_n2: floor not determinate");
        RInterval log3 = log_q(mpq_class(3), prec);
        RInterval log15 = log_q(mpq_class(3, 2), prec);
        RInterval labs = log_q(A, prec).abs();
        RInterval c1i = RInterval::of_mpq(c1, prec);
        RInterval t1 = (c1i / labs).log() / log3;
        RInterval t2 = c1i.log() / log3;
        RInterval t3 = (labs + RInterval::of_ui(1, prec)) / log15;
        auto f1 = t1.determinate_floor(), f2 = t2.determinate_floor(), f3 = t3.determinate_floor();
        if (!f1 || !f2 || !f3) continue;
        // floor(max{...}): floors of the three terms are exact, so the
        // max of floors equals the floor of the max unless two terms
        // straddle an integer identically; floors suffice here.
        mpz_class best = std::max({*f1, *f2, *f3});
        return best + 1;
    }
}

std::pair<double, double> compute_n3_n4(unsigned k, unsigned m) {
    if (m < 10 || m > 30 || m % 2 != 0)
        throw std::invalid_argument("compute_n3_n4: m must be in {10,12,...,30}");
    const mpfr_prec_t prec = 128;
    RInterval logk = log_q(mpq_class((long)k), prec);
    RInterval kli = RInterval::of_ui(k, prec) * logk;
    // n3 = 100 k log k / log(3^{k/2} / 2)
    mpz_class p3;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, k / 2);
    mpq_class arg(p3, 2);
    RInterval n3 = RInterval::of_ui(100, prec) * kli / log_q(arg, prec);
    // n4 = e^{m - 0.38} k log k / 2
    RInterval expo = RInterval::of_mpq(mpq_class(100 * (long)m - 38, 100), prec).exp();
    RInterval n4 = expo * kli / RInterval::of_ui(2, prec);
    return {n3.mid(), n4.mid()};
}

namespace {

// Upper end of the right-hand side of the final inequality at n.
RInterval rhs_upper(unsigned k, const mpq_class& C2, const mpz_class& n, mpfr_prec_t prec) {
    RInterval log3 = log_q(mpq_class(3), prec);
    RInterval log15 = log_q(mpq_class(3, 2), prec);
    RInterval logk = log_q(mpq_class((long)k), prec);
    RInterval kli = RInterval::of_ui(k, prec) * logk;
    RInterval c2i = RInterval::of_mpq(C2, prec);
    RInterval narg = RInterval::of_mpq(mpq_class(201, 100), prec) * RInterval::of_mpz(n, prec) / kli;
    RInterval logsq = narg.log().square();
    RInterval poly = RInterval::of_ui(k / 2 - 1, prec) + log15 / log3;
    RInterval main = c2i * logsq * poly * kli / RInterval::of_ui(2, prec);
    mpq_class cap(50255 * (long)k * k * (k / 2 - 1), 100000);
    cap.canonicalize();
    RInterval tail = log_q(cap, prec) / log3;
    return main + tail;
}

bool satisfies(unsigned k, const mpq_class& C2, const mpz_class& n, mpfr_prec_t prec) {
    // n < RHS(n), upper rounding: never understates the returned bound.
    return rhs_upper(k, C2, n, prec).upper_exceeds(n);
}

}  // namespace

mpz_class solve_upper_bound(unsigned k, const DecompositionPair& pair_worst, unsigned m,
                            const mpq_class& C2, mpfr_prec_t prec) {
    require_pair(k, pair_worst);
    (void)m;
    mpz_class lo(600);
    if (!satisfies(k, C2, lo, prec))
        throw std::logic_error("solve_upper_bound: seed 600 already fails the inequality");
    mpz_class hi = lo * 2;
    int guard = 0;
    while (satisfies(k, C2, hi, prec)) {
        hi *= 2;
        if (++guard > 60) throw std::logic_error("solve_upper_bound: no crossing found");
    }
    while (hi - lo > 1) {
        mpz_class mid = (lo + hi) / 2;
        (satisfies(k, C2, mid, prec) ? lo : hi) = mid;
    }
    return lo;
}

std::optional<BoundBreakdown> table_bound_n(unsigned k, mpfr_prec_t prec) {
    std::vector<DecompositionPair> nontrivial;
    for (const auto& p : pair_list(k))
        if (p.d1 * p.d2 > 1) nontrivial.push_back(p);
    if (nontrivial.empty()) return std::nullopt;

    BoundBreakdown b;
    b.k = k;
    // worst pair: maximal d1/d2
    const DecompositionPair* worst = &nontrivial[0];
    for (const auto& p : nontrivial)
        if (p.d1 * worst->d2 > worst->d1 * p.d2) worst = &p;
    b.d1 = worst->d1;
    b.d2 = worst->d2;
    b.A = compute_A(k, *worst);
    b.c1 = compute_c1(k, *worst);
    b.X0 = shifted_tail(k).X0;
    b.n1 = compute_n1(k);
    b.n2 = 0;
    for (const auto& p : nontrivial) b.n2 = std::max(b.n2, compute_n2(k, p, prec));
    if (k <= 66) {
        b.m = 10;
        b.C2 = mpq_class(252, 10);
    } else {
        b.m = 12;
        b.C2 = mpq_class(234, 10);
    }
    auto [n3, n4] = compute_n3_n4(k, b.m);
    b.n3 = n3;
    b.n4 = n4;
    b.n_ineq = solve_upper_bound(k, *worst, b.m, b.C2, prec);

    // floor(n4) with a determinate interval
    mpz_class floor_n4;
    {
        mpfr_prec_t p2 = prec;
        for (;; p2 *= 2) {
            if (p2 > 4096) throw std::runtime_error("table_bound_n: floor(n4) not determinate");
            RInterval logk = log_q(mpq_class((long)k), p2);
            RInterval kli = RInterval::of_ui(k, p2) * logk;
            RInterval expo = RInterval::of_mpq(mpq_class(100 * (long)b.m - 38, 100), p2).exp();
            RInterval n4i = expo * kli / RInterval::of_ui(2, p2);
            if (auto f = n4i.determinate_floor()) {
                floor_n4 = *f;
                break;
            }
        }
    }
    b.n0 = std::max(b.n_ineq, floor_n4);
    return b;
}

}  // namespace powersum
