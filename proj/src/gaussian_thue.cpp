#include "powersum/gaussian_thue.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <omp.h>

namespace powersum {

GaussianInt gaussian_pow(GaussianInt z, unsigned n) {
    GaussianInt acc(1, 0);
    while (n) {
        if (n & 1) acc = acc * z;
        z = z * z;
        n >>= 1;
    }
    return acc;
}

GaussianInt gaussian_prime_above(u64 p) {
    if (p % 4 != 1) throw std::invalid_argument("gaussian_prime_above: p must be = 1 (mod 4)");
    for (u64 re = 1; re * re <= p; ++re) {
        u64 rem = p - re * re;
        u64 im = (u64)std::sqrt((double)rem);
        while (im * im > rem) --im;
        while ((im + 1) * (im + 1) <= rem) ++im;
        if (im * im == rem && re > im && im > 0)
            return GaussianInt(mpz_class((unsigned long)re), mpz_class((unsigned long)im));
    }
    throw std::logic_error("gaussian_prime_above: no two-square representation found");
}

std::vector<GaussianInt> beta_for(u64 a) {
    if (a <= 1 || a % 2 == 0) throw std::invalid_argument("beta_for: a must be odd > 1");
    auto fac = factorize_u64(a);
    for (auto [p, e] : fac)
        if (p % 4 == 3)
            throw std::invalid_argument("beta_for: prime factor " + std::to_string(p) +
                                        " is = 3 (mod 4)");
    // Per prime, alpha uses pi or conj(pi) but never both; fixing the first
    // prime to pi picks one representative per conjugate class.
    std::vector<GaussianInt> alphas{GaussianInt(1, 0)};
    bool first = true;
    for (auto [p, e] : fac) {
        GaussianInt pi = gaussian_prime_above(p);
        GaussianInt pie = gaussian_pow(pi, e);
        GaussianInt pbe = gaussian_pow(pi.conj(), e);
        std::vector<GaussianInt> next;
        for (const auto& al : alphas) {
            next.push_back(al * pie);
            if (!first) next.push_back(al * pbe);
        }
        alphas = std::move(next);
        first = false;
    }
    GaussianInt one_plus_i(1, 1);
    std::vector<GaussianInt> out;
    out.reserve(alphas.size());
    for (const auto& al : alphas) out.push_back(one_plus_i * al);
    return out;
}

mpz_class BinaryForm::eval(const mpz_class& t, const mpz_class& s) const {
    mpz_class acc(0), tp(1);
    std::vector<mpz_class> tpow(n + 1);
    for (unsigned j = 0; j <= n; ++j) {
        tpow[j] = tp;
        tp *= t;
    }
    mpz_class sp(1);
    for (unsigned j = 0; j <= n; ++j) {
        acc += coeffs[j] * tpow[n - j] * sp;
        sp *= s;
    }
    return acc;
}

std::pair<BinaryForm, BinaryForm> thue_forms(const GaussianInt& beta, unsigned n) {
    if (n < 3) throw std::invalid_argument("thue_forms: n must be >= 3");
    // beta (t + si)^n = sum_j binom(n,j) i^j beta t^{n-j} s^j.
    BinaryForm re{n, std::vector<mpz_class>(n + 1)};
    BinaryForm im{n, std::vector<mpz_class>(n + 1)};
    mpz_class binom;
    for (unsigned j = 0; j <= n; ++j) {
        mpz_bin_uiui(binom.get_mpz_t(), n, j);
        mpz_class re_c, im_c;
        switch (j % 4) {
            case 0: re_c = beta.re; im_c = beta.im; break;
            case 1: re_c = -beta.im; im_c = beta.re; break;
            case 2: re_c = -beta.re; im_c = -beta.im; break;
            default: re_c = beta.im; im_c = -beta.re; break;
        }
        re.coeffs[j] = binom * re_c;
        im.coeffs[j] = binom * im_c;
    }
    return {re, im};
}

namespace {

// Exact evaluation in __int128 is safe when (n+1) * max|c| * bound^n fits.
bool int128_safe(const BinaryForm& form, long bound) {
    mpz_class mx(0);
    for (const auto& c : form.coeffs) mx = std::max(mx, mpz_class(abs(c)));
    mpz_class worst = mpz_class((unsigned long)(form.n + 1)) * mx;
    mpz_class b((long)std::max<long>(bound, 1));
    for (unsigned i = 0; i < form.n; ++i) worst *= b;
    return mpz_sizeinbase(worst.get_mpz_t(), 2) <= 120;
}

ThueOutcome search_impl(const BinaryForm& form, int rhs, long bound, bool parallel) {
    if (rhs != 1 && rhs != -1) throw std::invalid_argument("bounded_search: rhs must be +-1");
    if (bound < 0) throw std::invalid_argument("bounded_search: bound must be >= 0");
    ThueOutcome out{form, rhs, bound, {}};
    const unsigned n = form.n;
    const bool fast = int128_safe(form, bound);
    std::vector<__int128> c128(n + 1);
    if (fast)
        for (unsigned j = 0; j <= n; ++j) {
            mpz_class abs_c = abs(form.coeffs[j]);
            __int128 v = 0;
            for (long b = (long)mpz_sizeinbase(abs_c.get_mpz_t(), 2) - 1; b >= 0; --b)
                v = (v << 1) | mpz_tstbit(abs_c.get_mpz_t(), b);
            c128[j] = form.coeffs[j] < 0 ? -v : v;
        }

    std::vector<std::vector<std::pair<long, long>>> hits(2 * bound + 1);
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
    for (long ti = 0; ti <= 2 * bound; ++ti) {
        long t = ti - bound;
        auto& local = hits[ti];
        if (fast) {
            // Horner in s: F(t,s) = sum_m (c_m t^{n-m}) s^m.
            std::vector<__int128> row(n + 1);
            __int128 tp = 1;
            for (unsigned j = 0; j <= n; ++j) {
                row[n - j] = c128[n - j] * tp;  // tp = t^j, row[m] = c_m t^{n-m}
                tp *= t;
            }
            for (long s = -bound; s <= bound; ++s) {
                __int128 acc = row[n];
                for (int j = (int)n - 1; j >= 0; --j) acc = acc * s + row[j];
                if (acc == rhs) local.emplace_back(t, s);
            }
        } else {
            mpz_class acc, ts(t);
            for (long s = -bound; s <= bound; ++s) {
                acc = form.eval(ts, mpz_class(s));
                if (acc == rhs) local.emplace_back(t, s);
            }
        }
    }
    for (auto& v : hits)
        for (auto& p : v) out.solutions.push_back(p);
    return out;
}

}  // namespace

ThueOutcome bounded_search(const BinaryForm& form, int rhs, long bound) {
    return search_impl(form, rhs, bound, true);
}

ThueOutcome bounded_search_serial(const BinaryForm& form, int rhs, long bound) {
    return search_impl(form, rhs, bound, false);
}

bool conjugation_symmetry_check(const GaussianInt& beta, unsigned n, unsigned samples, u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    for (unsigned i = 0; i < samples; ++i) {
        mpz_class t(dist(rng)), s(dist(rng));
        GaussianInt z(t, s);
        GaussianInt zc(s, -t);  // s - t i
        GaussianInt w = gaussian_pow(z, n);
        GaussianInt wc = gaussian_pow(zc, n);
        GaussianInt bw = beta * w;
        GaussianInt bwc = beta * wc;
        // Re(i beta z^n) = -Im(beta z^n); Re(-i beta z^n) = Im(beta z^n).
        mpz_class re_plus = -bw.im;
        mpz_class re_minus = bw.im;
        mpz_class expect_plus, expect_minus;
        switch (n % 4) {
            case 0: expect_plus = -bwc.im; expect_minus = bwc.im; break;
            case 1: expect_plus = -bwc.re; expect_minus = bwc.re; break;
            case 2: expect_plus = bwc.im; expect_minus = -bwc.im; break;
            default: expect_plus = bwc.re; expect_minus = -bwc.re; break;
        }
        if (re_plus != expect_plus || re_minus != expect_minus) return false;
    }
    return true;
}

CandidateVerdict verify_candidate(unsigned k, unsigned n, u64 a, const mpz_class& y1_tilde) {
    if (y1_tilde < 1 || mpz_even_p(y1_tilde.get_mpz_t()))
        throw std::invalid_argument("verify_candidate: y1_tilde must be odd >= 1");
    CandidateVerdict v;
    mpz_class yp;
    mpz_pow_ui(yp.get_mpz_t(), y1_tilde.get_mpz_t(), n);
    mpz_class M = 2 * mpz_class((unsigned long)a) * yp - 1;
    mpz_class x;
    if (!is_square(M, &x)) {
        v.failed_step = "2a*y1^n - 1 is not a perfect square";
        return v;
    }
    if (x <= 1 || mpz_even_p(x.get_mpz_t())) {
        v.failed_step = "square root is not an odd integer > 1";
        return v;
    }
    mpz_class xm1 = x - 1, xp1 = x + 1, lhs, t;
    mpz_pow_ui(lhs.get_mpz_t(), xm1.get_mpz_t(), k);
    mpz_pow_ui(t.get_mpz_t(), xp1.get_mpz_t(), k);
    lhs = (lhs + t) / 2;
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, k - 1);
    if (!mpz_divisible_p(lhs.get_mpz_t(), pow2.get_mpz_t())) {
        v.failed_step = "((x-1)^k + (x+1)^k)/2 not divisible by 2^{k-1}";
        return v;
    }
    mpz_class yn = lhs / pow2, y;
    if (!nth_root_exact(yn, n, &y)) {
        v.failed_step = "quotient is not an exact n-th power";
        return v;
    }
    v.solution = true;
    v.x = x;
    v.y = y;
    return v;
}

}  // namespace powersum
