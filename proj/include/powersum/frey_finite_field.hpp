#pragma once

#include <optional>
#include <vector>

#include "powersum/decomposition.hpp"
#include "powersum/integer_arith.hpp"
#include "powersum/polynomial_core.hpp"

namespace powersum {

/// Exactly t elements of F_ell^x with z^t = 1; requires t | ell - 1.
/// Ascending order.
std::vector<u64> roots_of_unity(u64 ell, u64 t);

/// Canonical square root (r <= ell - r) of a mod ell, or nullopt for a
/// non-residue.  Tonelli-Shanks.
std::optional<u64> sqrt_mod(u64 a, u64 ell);

/// Smallest generator of F_ell^x.
u64 primitive_root(u64 ell);

/// Long Weierstrass curve over F_ell, ell an odd prime.
struct WeierstrassModL {
    u64 ell;
    u64 a1, a2, a3, a4, a6;

    u64 discriminant() const;
    bool nonsingular() const { return discriminant() != 0; }
};

/// Reduced Frey curve Y^2 = X^3 + 2 x0 X^2 + (x0^2 + 1) X.
struct FreyCurveModL {
    u64 ell;
    u64 x0;
    u64 zeta;

    u64 a2() const { return 2 * x0 % ell; }
    u64 a4() const { return (mulmod(x0, x0, ell) + 1) % ell; }
    bool nonsingular() const { return a4() % ell != 0; }
    WeierstrassModL weierstrass() const { return {ell, 0, a2(), 0, a4(), 0}; }
};

/// a_ell = ell + 1 - #E(F_ell).  Quadratic-character sum, O(ell).
long trace_naive(const WeierstrassModL& c);
/// Shanks-Mestre order finding in the Hasse interval, O(ell^{1/4}) group ops.
long trace_bsgs(const WeierstrassModL& c);
/// Dispatches on ell: naive below 2^20, BSGS above.
long trace_of_frobenius(const WeierstrassModL& c);
long trace_of_frobenius(const FreyCurveModL& c);

struct FreyPoint {
    u64 x0;
    u64 zeta;
    bool operator==(const FreyPoint&) const = default;
    bool operator<(const FreyPoint& o) const {
        return x0 != o.x0 ? x0 < o.x0 : zeta < o.zeta;
    }
};

/// A(t, ell) = {(x0, zeta)}: zeta in mu_t, x0^2 = (2 d2/d1) zeta - 1, and
/// d2 f_k(x0^2) / (2^{k-2} d1) in mu_t union {0}.  Requires ell = t n + 1
/// prime with ell coprime to k and d1 d2.
std::vector<FreyPoint> build_A(u64 ell, u64 t, unsigned k, const DecompositionPair& pair,
                               const IntPoly& f_k);

/// Same set by scanning every (x0, zeta) in F_ell x mu_t; reference oracle.
std::vector<FreyPoint> build_A_bruteforce(u64 ell, u64 t, unsigned k,
                                          const DecompositionPair& pair, const IntPoly& f_k);

}  // namespace powersum
