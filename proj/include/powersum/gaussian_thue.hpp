#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "powersum/integer_arith.hpp"

namespace powersum {

struct GaussianInt {
    mpz_class re;
    mpz_class im;

    GaussianInt() : re(0), im(0) {}
    GaussianInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}

    GaussianInt operator+(const GaussianInt& o) const { return {re + o.re, im + o.im}; }
    GaussianInt operator*(const GaussianInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianInt conj() const { return {re, -im}; }
    mpz_class norm() const { return re * re + im * im; }
    bool operator==(const GaussianInt& o) const { return re == o.re && im == o.im; }
};

GaussianInt gaussian_pow(GaussianInt z, unsigned n);

/// Gaussian prime above p = 1 (mod 4), normalized as re > im > 0.
GaussianInt gaussian_prime_above(u64 p);

/// One representative beta = (1+i) * prod pi_p^{v_p(a)} per conjugate class,
/// norm(beta) = 2a.  Rejects a with a prime factor = 3 (mod 4).
std::vector<GaussianInt> beta_for(u64 a);

/// Homogeneous degree-n form sum_j c_j t^{n-j} s^j.
struct BinaryForm {
    unsigned n;
    std::vector<mpz_class> coeffs;  // c_0 .. c_n

    mpz_class eval(const mpz_class& t, const mpz_class& s) const;
};

/// Real and imaginary parts of beta (t + s i)^n as binary forms in (t, s).
std::pair<BinaryForm, BinaryForm> thue_forms(const GaussianInt& beta, unsigned n);

struct ThueOutcome {
    BinaryForm form;
    int rhs;  // +1 or -1
    long bound;
    std::vector<std::pair<long, long>> solutions;  // lexicographic (t, s)
};

/// Exhaustive search of form(t,s) = rhs over |t|,|s| <= bound.
/// Parallelized over t-strips; result order is deterministic.
ThueOutcome bounded_search(const BinaryForm& form, int rhs, long bound);
/// Same search without the parallel inner loop; reference for testing.
ThueOutcome bounded_search_serial(const BinaryForm& form, int rhs, long bound);

/// Checks, on `samples` pseudo-random (t,s), the n mod 4 case identity
/// relating Re(+-i beta (t+si)^n) to +-Re/Im(beta (s-ti)^n).
bool conjugation_symmetry_check(const GaussianInt& beta, unsigned n, unsigned samples,
                                u64 seed = 0x5eed);

struct CandidateVerdict {
    bool solution = false;
    mpz_class x;
    mpz_class y;
    std::string failed_step;  // set when solution == false
};

/// For M = 2 a y1t^n - 1: if M = x^2 with x odd > 1, tests whether
/// ((x-1)^k + (x+1)^k)/2 = 2^{k-1} y^n for an integer y.
CandidateVerdict verify_candidate(unsigned k, unsigned n, u64 a, const mpz_class& y1_tilde);

}  // namespace powersum
