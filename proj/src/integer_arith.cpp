#include "powersum/integer_arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace powersum {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = m > 1 ? 1 : 0;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

unsigned long valuation(const mpz_class& m, const mpz_class& p) {
    if (m == 0) throw std::invalid_argument("valuation: m must be nonzero");
    if (p < 2) throw std::invalid_argument("valuation: p must be a prime >= 2");
    mpz_class r;
    return mpz_remove(r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
}

unsigned long valuation_u64(u64 m, u64 p) {
    if (m == 0) throw std::invalid_argument("valuation: m must be nonzero");
    unsigned long e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return e;
}

namespace {

bool miller_rabin_u64(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime_u64(u64 m) {
    if (m < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (m == p) return true;
        if (m % p == 0) return false;
    }
    // Fixed base set proven correct below 3.3 * 10^24 > 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!miller_rabin_u64(m, a)) return false;
    return true;
}

PrimalityResult is_prime_ex(const mpz_class& m) {
    if (m < 0) return {false, true};
    if (mpz_sizeinbase(m.get_mpz_t(), 2) <= 64) {
        return {is_prime_u64(mpz_get_ui(m.get_mpz_t())), true};
    }
    // 64 Miller-Rabin rounds: error probability below 4^-64 = 2^-128.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x9e3779b97f4a7c15ull);
    if (mpz_even_p(m.get_mpz_t())) return {false, true};
    mpz_class d = m - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    d >>= r;
    for (int round = 0; round < 64; ++round) {
        mpz_class a = rng.get_z_range(m - 3) + 2;
        mpz_class x;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
        if (x == 1 || x == m - 1) continue;
        bool witness = true;
        for (unsigned long i = 1; i < r; ++i) {
            x = x * x % m;
            if (x == m - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return {false, true};
    }
    return {true, false};
}

bool is_prime(const mpz_class& m) { return is_prime_ex(m).probably_prime; }

std::optional<FactorWitness> nth_power_exclusion_witness(const mpz_class& m, u64 trial_bound) {
    if (m < 2) throw std::invalid_argument("nth_power_exclusion_witness: m must be >= 2");
    for (u64 q : primes_up_to(trial_bound)) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), q) == 0) continue;
        unsigned long e = valuation(m, mpz_class((unsigned long)q));
        if (e <= 2) return FactorWitness{m, q, (unsigned)e};
    }
    return std::nullopt;
}

bool is_square(const mpz_class& m, mpz_class* root) {
    if (m < 0) return false;
    if (mpz_perfect_square_p(m.get_mpz_t()) == 0) return false;
    if (root) mpz_sqrt(root->get_mpz_t(), m.get_mpz_t());
    return true;
}

bool nth_root_exact(const mpz_class& m, unsigned long n, mpz_class* root) {
    if (m < 0) return false;
    mpz_class r;
    int exact = mpz_root(r.get_mpz_t(), m.get_mpz_t(), n);
    if (exact == 0) return false;
    if (root) *root = r;
    return true;
}

namespace {

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    u64 x = 2, y = 2, c = 1, d = 1;
    while (true) {
        x = 2;
        y = 2;
        d = 1;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            d = gcd_u64(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
        ++c;
    }
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factorize_u64(u64 m) {
    std::vector<std::pair<u64, unsigned>> out;
    if (m < 2) return out;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (m % p == 0) {
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    std::vector<u64> stack;
    if (m > 1) stack.push_back(m);
    std::vector<u64> primes;
    while (!stack.empty()) {
        u64 v = stack.back();
        stack.pop_back();
        if (is_prime_u64(v)) {
            primes.push_back(v);
            continue;
        }
        u64 d = pollard_rho(v);
        stack.push_back(d);
        stack.push_back(v / d);
    }
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size();) {
        size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.emplace_back(primes[i], (unsigned)(j - i));
        i = j;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace powersum
