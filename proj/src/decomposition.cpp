#include "powersum/decomposition.hpp"

#include <algorithm>
#include <stdexcept>

namespace powersum {

namespace {

void require_valid(unsigned k) {
    if (k < 6 || k % 4 != 2)
        throw std::invalid_argument("k must satisfy k >= 6 and k = 2 (mod 4), got " +
                                    std::to_string(k));
}

}  // namespace

std::vector<u64> prime_set_P(unsigned k) {
    require_valid(k);
    std::vector<u64> out;
    for (auto [p, e] : factorize_u64(k / 2))
        if (p % 4 == 1) out.push_back(p);
    return out;
}

std::vector<u64> divisor_set_D(unsigned k) {
    u64 half = k / 2;
    std::vector<u64> out{1};
    for (u64 p : prime_set_P(k)) {
        unsigned e = (unsigned)valuation_u64(half, p);
        std::vector<u64> next;
        for (u64 d : out) {
            u64 v = d;
            for (unsigned i = 0; i <= e; ++i) {
                next.push_back(v);
                v *= p;
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<DecompositionPair> pair_list(unsigned k) {
    u64 half = k / 2;
    auto divs = divisor_set_D(k);
    std::vector<DecompositionPair> out;
    for (u64 d1 : divs)
        for (u64 d2 : divs) {
            if (gcd_u64(d1, d2) != 1) continue;
            if (half % (d1 * d2) != 0) continue;
            out.push_back({k, d1, d2});
        }
    std::sort(out.begin(), out.end(), [](const DecompositionPair& a, const DecompositionPair& b) {
        return std::pair(a.d1, a.d2) < std::pair(b.d1, b.d2);
    });
    return out;
}

std::vector<LebesgueNagellCase> lebesgue_nagell_cases(unsigned k, unsigned n) {
    if (n < 3) throw std::invalid_argument("lebesgue_nagell_cases: n must be >= 3");
    auto P = prime_set_P(k);
    std::vector<u64> values{1};
    for (u64 p : P) {
        std::vector<u64> next;
        for (u64 v : values) {
            u64 pw = 1;
            for (unsigned r = 0; r < n; ++r) {
                next.push_back(v * pw);
                pw *= p;
            }
        }
        values = std::move(next);
    }
    std::sort(values.begin(), values.end());
    std::vector<LebesgueNagellCase> out;
    for (u64 a : values)
        if (a > 1) out.push_back({k, n, a});
    return out;
}

std::vector<Y1Triple> y1_equals_1_triples(unsigned k_min, unsigned k_max) {
    if (k_min < 6 || k_max > 100 || k_min > k_max)
        throw std::invalid_argument("y1_equals_1_triples: need 6 <= k_min <= k_max <= 100");
    std::vector<Y1Triple> out;
    for (unsigned k = k_min; k <= k_max; ++k) {
        if (k % 4 != 2) continue;
        for (const auto& pr : pair_list(k)) {
            if (pr.d2 <= 1 || pr.d1 != 1) continue;
            mpz_class sq = 2 * mpz_class((unsigned long)pr.d2) - 1;
            mpz_class root;
            if (is_square(sq, &root) && root > 1) out.push_back({pr.d2, k, mpz_get_ui(root.get_mpz_t())});
        }
    }
    return out;
}

bool infinite_family_hypothesis(unsigned k) {
    if (k % 4 != 2) throw std::invalid_argument("k must be = 2 (mod 4)");
    for (auto [p, e] : factorize_u64(k))
        if (p % 2 == 1 && p % 4 != 3) return false;
    return true;
}

bool exponent_gate_holds(unsigned k, unsigned n) {
    require_valid(k);
    for (auto [p, e] : factorize_u64(k))
        if (p % 4 == 1 && n <= 2 * e) return false;
    return true;
}

}  // namespace powersum
