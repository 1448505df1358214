#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace powersum {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 gcd_u64(u64 a, u64 b);

/// Sieve of Eratosthenes, primes <= n in increasing order.
std::vector<u64> primes_up_to(u64 n);

/// Largest e with p^e | m.  Rejects m = 0.
unsigned long valuation(const mpz_class& m, const mpz_class& p);
unsigned long valuation_u64(u64 m, u64 p);

/// Deterministic Miller-Rabin, correct for all 64-bit inputs.
bool is_prime_u64(u64 m);

struct PrimalityResult {
    bool probably_prime;
    /// True when the answer is unconditional (m < 2^64, fixed-base battery).
    /// Otherwise Miller-Rabin with 64 rounds, error < 2^-128.
    bool deterministic;
};

PrimalityResult is_prime_ex(const mpz_class& m);
bool is_prime(const mpz_class& m);

/// Witness that m is not an n-th power for any n >= 3: a prime q with
/// 1 <= v_q(m) <= 2.
struct FactorWitness {
    mpz_class m;
    u64 q;
    unsigned exponent;
};

/// Smallest prime q <= trial_bound with 1 <= v_q(m) <= 2, or nullopt.
std::optional<FactorWitness> nth_power_exclusion_witness(const mpz_class& m,
                                                         u64 trial_bound = 10000);

/// True iff m is a perfect square; fills *root with the nonnegative root.
bool is_square(const mpz_class& m, mpz_class* root = nullptr);

/// True iff m = r^n with integer r >= 0; fills *root.
bool nth_root_exact(const mpz_class& m, unsigned long n, mpz_class* root = nullptr);

/// Prime factorization of a 64-bit integer (trial division + Pollard rho).
std::vector<std::pair<u64, unsigned>> factorize_u64(u64 m);

}  // namespace powersum
