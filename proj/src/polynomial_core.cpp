#include "powersum/polynomial_core.hpp"

#include <stdexcept>

namespace powersum {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly({c}); }

IntPoly IntPoly::monomial(const mpz_class& c, std::size_t power) {
    std::vector<mpz_class> v(power + 1, mpz_class(0));
    v[power] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const mpz_class& IntPoly::coeff(std::size_t i) const {
    static const mpz_class zero(0);
    return i < coeffs_.size() ? coeffs_[i] : zero;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

u64 IntPoly::eval_mod(u64 x, u64 ell) const {
    u64 acc = 0;
    x %= ell;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        u64 c = mpz_fdiv_ui(it->get_mpz_t(), ell);  // nonnegative residue
        acc = (mulmod(acc, x, ell) + c) % ell;
    }
    return acc;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<mpz_class> v(std::max(coeffs_.size(), o.coeffs_.size()), mpz_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<mpz_class> v(std::max(coeffs_.size(), o.coeffs_.size()), mpz_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] -= o.coeffs_[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<mpz_class> v(coeffs_.size() + o.coeffs_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::compose_shift(const mpz_class& shift) const {
    // Horner: p(X+s) = (...((c_n)(X+s) + c_{n-1})(X+s) + ...) + c_0
    IntPoly acc;
    IntPoly xs({shift, mpz_class(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * xs + IntPoly::constant(*it);
    return acc;
}

bool valid_exponent(unsigned k) { return k >= 6 && k % 4 == 2; }

namespace {

void require_valid(unsigned k, unsigned lo) {
    if (k < lo || k % 4 != 2)
        throw std::invalid_argument("exponent k must satisfy k >= " + std::to_string(lo) +
                                    " and k = 2 (mod 4), got " + std::to_string(k));
}

}  // namespace

IntPoly build_g(unsigned k) {
    require_valid(k, 2);
    // ((t-1)^k + (t+1)^k)/2: odd powers cancel, even powers double.
    std::vector<mpz_class> v(k + 1, mpz_class(0));
    mpz_class binom;
    for (unsigned i = 0; i <= k; i += 2) {
        mpz_bin_uiui(binom.get_mpz_t(), k, i);
        v[i] = binom;
    }
    return IntPoly(std::move(v));
}

IntPoly build_f(unsigned k) {
    require_valid(k, 6);
    unsigned half = k / 2;
    IntPoly f;
    mpz_class binom;
    for (unsigned i = 0; 2 * i + 1 <= half; ++i) {
        mpz_bin_uiui(binom.get_mpz_t(), half, 2 * i + 1);
        mpz_class c = binom << (half - (2 * i + 1));
        IntPoly term = IntPoly::constant(c);
        IntPoly tp1({mpz_class(1), mpz_class(1)});
        for (unsigned j = 0; j < 2 * i; ++j) term = term * tp1;
        unsigned tpow = (half - (2 * i + 1)) / 2;
        f = f + term * IntPoly::monomial(1, tpow);
    }
    return f;
}

ShiftedTail shifted_tail(unsigned k) {
    require_valid(k, 6);
    IntPoly shifted = build_f(k).compose_shift(-1);
    unsigned deg = k / 2 - 1;
    if (shifted.degree() != (long)deg || shifted.coeff(deg) != 1)
        throw std::logic_error("shifted_tail: unexpected leading term");
    ShiftedTail out;
    out.k = k;
    out.h.assign(shifted.coeffs().begin(), shifted.coeffs().begin() + deg);
    // X0 = floor(max{ sum|h_i| / h_top , 200 h_top }) + 1, exact rational max.
    const mpz_class& htop = out.h[deg - 1];
    mpz_class sum_abs(0);
    for (unsigned i = 0; i + 1 < deg; ++i) sum_abs += abs(out.h[i]);
    mpq_class first(sum_abs, htop);
    first.canonicalize();
    mpq_class second(200 * htop);
    mpq_class mx = first > second ? first : second;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    out.X0 = fl + 1;
    return out;
}

}  // namespace powersum
