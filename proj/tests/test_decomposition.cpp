#include <doctest.h>

#include <map>

#include "powersum/decomposition.hpp"

using namespace powersum;

namespace {

// Table of nontrivial pairs per k, 6 <= k <= 98.
const std::map<unsigned, std::vector<std::pair<u64, u64>>> kExpectedTable = {
    {10, {{1, 5}, {5, 1}}},  {26, {{1, 13}, {13, 1}}}, {30, {{1, 5}, {5, 1}}},
    {34, {{1, 17}, {17, 1}}}, {50, {{1, 5}, {1, 25}, {5, 1}, {25, 1}}},
    {58, {{1, 29}, {29, 1}}}, {70, {{1, 5}, {5, 1}}},  {74, {{1, 37}, {37, 1}}},
    {78, {{1, 13}, {13, 1}}}, {82, {{1, 41}, {41, 1}}}, {90, {{1, 5}, {5, 1}}},
};

}  // namespace

TEST_CASE("prime_set_P examples") {
    CHECK(prime_set_P(10) == std::vector<u64>{5});
    CHECK(prime_set_P(6).empty());
    CHECK(prime_set_P(50) == std::vector<u64>{5});
    CHECK_THROWS(prime_set_P(12));
}

TEST_CASE("pair_list examples") {
    auto p50 = pair_list(50);
    REQUIRE(p50.size() == 5);
    CHECK(p50[0] == DecompositionPair{50, 1, 1});
    CHECK(p50[1] == DecompositionPair{50, 1, 5});
    CHECK(p50[2] == DecompositionPair{50, 1, 25});
    CHECK(p50[3] == DecompositionPair{50, 5, 1});
    CHECK(p50[4] == DecompositionPair{50, 25, 1});

    CHECK(pair_list(10).size() == 3);
    CHECK(pair_list(34).size() == 3);
}

TEST_CASE("nontrivial pairs reproduce the expected table over [6, 98]") {
    for (unsigned k = 6; k <= 98; k += 4) {
        std::vector<std::pair<u64, u64>> got;
        for (const auto& p : pair_list(k))
            if (p.d1 * p.d2 > 1) got.emplace_back(p.d1, p.d2);
        auto it = kExpectedTable.find(k);
        if (it == kExpectedTable.end()) {
            CAPTURE(k);
            CHECK(got.empty());
        } else {
            CAPTURE(k);
            CHECK(got == it->second);
        }
    }
}

TEST_CASE("pair invariants hold") {
    for (unsigned k = 6; k <= 98; k += 4) {
        for (const auto& p : pair_list(k)) {
            CHECK(p.d1 % 2 == 1);
            CHECK(p.d2 % 2 == 1);
            CHECK(gcd_u64(p.d1, p.d2) == 1);
            CHECK((k / 2) % (p.d1 * p.d2) == 0);
            for (auto [q, e] : factorize_u64(p.d1 * p.d2)) CHECK(q % 4 == 1);
        }
    }
}

TEST_CASE("lebesgue_nagell_cases examples") {
    auto c26 = lebesgue_nagell_cases(26, 3);
    REQUIRE(c26.size() == 2);
    CHECK(c26[0].a == 13);
    CHECK(c26[1].a == 169);

    CHECK(lebesgue_nagell_cases(6, 5).empty());

    auto c50 = lebesgue_nagell_cases(50, 3);
    REQUIRE(c50.size() == 2);
    CHECK(c50[0].a == 5);
    CHECK(c50[1].a == 25);
}

TEST_CASE("lebesgue_nagell_cases matches brute-force enumeration") {
    for (unsigned k : {10u, 26u, 50u, 90u})
        for (unsigned n : {3u, 4u, 5u, 7u}) {
            auto cases = lebesgue_nagell_cases(k, n);
            // brute force over all integers up to p_max^n
            auto P = prime_set_P(k);
            std::size_t count = 0;
            if (!P.empty()) {
                u64 limit = 1;
                for (u64 p : P)
                    for (unsigned r = 1; r < n; ++r) limit *= p;
                for (u64 a = 2; a <= limit; ++a) {
                    u64 rest = a;
                    bool ok = true;
                    for (u64 p : P) {
                        unsigned e = 0;
                        while (rest % p == 0) {
                            rest /= p;
                            ++e;
                        }
                        if (e >= n) ok = false;
                    }
                    if (rest != 1) ok = false;
                    if (ok) ++count;
                }
            }
            CHECK(cases.size() == count);
        }
}

TEST_CASE("y1 = 1 exclusion triples over [6, 100]") {
    auto triples = y1_equals_1_triples(6, 100);
    std::vector<Y1Triple> expected = {
        {5, 10, 3},  {13, 26, 5}, {5, 30, 3},  {5, 50, 3}, {25, 50, 7},
        {5, 70, 3},  {13, 78, 5}, {41, 82, 9}, {5, 90, 3},
    };
    CHECK(triples == expected);
    CHECK(y1_equals_1_triples(6, 6).empty());
    for (const auto& t : triples) CHECK(2 * t.d2 - 1 == t.x * t.x);
}

TEST_CASE("each triple's m(k, x) has a small witness prime") {
    // m(10, 3) = (2^10 + 4^10)/2 = 524800 with witness q = 5
    mpz_class m = ((mpz_class(1) << 10) + (mpz_class(1) << 20)) / 2;
    auto w = nth_power_exclusion_witness(m, 100);
    REQUIRE(w.has_value());
    CHECK(w->q == 5);
}

TEST_CASE("infinite_family_hypothesis examples") {
    CHECK(infinite_family_hypothesis(6));
    CHECK(infinite_family_hypothesis(14));
    CHECK_FALSE(infinite_family_hypothesis(10));
}

TEST_CASE("exponent gate: holds for all n >= 5 when 6 <= k <= 100") {
    for (unsigned k = 6; k <= 98; k += 4)
        for (unsigned n = 5; n <= 20; ++n) CHECK(exponent_gate_holds(k, n));
    // v_5(50) = 2, so n = 4 fails the gate for k = 50
    CHECK_FALSE(exponent_gate_holds(50, 4));
    CHECK(exponent_gate_holds(50, 5));
}
