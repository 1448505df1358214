#pragma once

#include <vector>

#include "powersum/integer_arith.hpp"

namespace powersum {

/// Coprime pair of odd divisors (d1, d2) attached to k, with d1*d2 | k/2
/// and every prime factor of d1*d2 = 1 (mod 4).
struct DecompositionPair {
    unsigned k;
    u64 d1;
    u64 d2;
    bool operator==(const DecompositionPair&) const = default;
};

/// Multiplier case for x^2 + 1 = 2a y^n: a odd > 1, prime factors from P(k),
/// each with exponent in [1, n).
struct LebesgueNagellCase {
    unsigned k;
    unsigned n;
    u64 a;
    bool operator==(const LebesgueNagellCase&) const = default;
};

struct Y1Triple {
    u64 d2;
    unsigned k;
    u64 x;  // 2*d2 - 1 = x^2
    bool operator==(const Y1Triple&) const = default;
};

/// Primes p | k/2 with p = 1 (mod 4), increasing.
std::vector<u64> prime_set_P(unsigned k);

/// 1 together with the divisors of k/2 whose prime factors all lie in P(k).
std::vector<u64> divisor_set_D(unsigned k);

/// All pairs (d1, d2) from D(k) with gcd(d1,d2) = 1 and d1*d2 | k/2,
/// including (1,1), in lexicographic order.
std::vector<DecompositionPair> pair_list(unsigned k);

/// All admissible a = prod p^{r_p} (p in P(k), 0 <= r_p < n) with a > 1,
/// ascending.
std::vector<LebesgueNagellCase> lebesgue_nagell_cases(unsigned k, unsigned n);

/// Triples (d2, k, x) with d2 > 1 listed for k and 2*d2 - 1 = x^2, x > 1,
/// over k in [k_min, k_max].
std::vector<Y1Triple> y1_equals_1_triples(unsigned k_min, unsigned k_max);

/// True iff every odd prime factor of k is = 3 (mod 4).
bool infinite_family_hypothesis(unsigned k);

/// The gate n > 2 v_p(k) for every prime p = 1 (mod 4) dividing k.
bool exponent_gate_holds(unsigned k, unsigned n);

}  // namespace powersum
