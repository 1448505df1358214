#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "powersum/integer_arith.hpp"

namespace powersum {

/// Dense single-variable polynomial with exact integer coefficients.
/// coeff(i) is the coefficient of X^i; the top coefficient is nonzero
/// unless the polynomial is zero.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    static IntPoly constant(const mpz_class& c);
    static IntPoly monomial(const mpz_class& c, std::size_t power);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const mpz_class& coeff(std::size_t i) const;
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    mpz_class eval(const mpz_class& x) const;
    u64 eval_mod(u64 x, u64 ell) const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }

    /// Composition with X + shift.
    IntPoly compose_shift(const mpz_class& shift) const;

private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

bool valid_exponent(unsigned k);

/// g_k(t) = ((t-1)^k + (t+1)^k)/2.  Requires k >= 2, k = 2 (mod 4).
IntPoly build_g(unsigned k);

/// f_k with (t^2+1) f_k(t^2) = g_k(t), via the closed-form binomial sum.
/// Requires k >= 6, k = 2 (mod 4).
IntPoly build_f(unsigned k);

/// Coefficients h_0..h_{k/2-2} of f_k(X-1) together with the threshold X0.
struct ShiftedTail {
    unsigned k;
    std::vector<mpz_class> h;  // h[i] = coefficient of X^i, i < k/2-1
    mpz_class X0;
};

ShiftedTail shifted_tail(unsigned k);

}  // namespace powersum
