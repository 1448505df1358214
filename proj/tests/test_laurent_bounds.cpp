#include <doctest.h>

#include <cmath>

#include "powersum/laurent_bounds.hpp"

using namespace powersum;

TEST_CASE("compute_c1 examples") {
    // k = 10, (5,1): 1.0051 * 5 * 40 = 201.02 = 10051/50 exactly
    mpq_class c = compute_c1(10, {10, 5, 1});
    CHECK(c == mpq_class(10051, 50));
    // k = 10, (1,5): 1.0051 * 40 / 5 = 8.0408 = 10051/1250
    CHECK(compute_c1(10, {10, 1, 5}) == mpq_class(10051, 1250));
    // cap: 0.50255 k^2 (k/2 - 1) with equality at d1/d2 = k/2
    mpq_class cap(50255 * 100 * 4, 100000);
    cap.canonicalize();
    CHECK(c == cap);
}

TEST_CASE("c1 cap holds for every pair, equality only at max d1/d2") {
    for (unsigned k = 6; k <= 98; k += 4) {
        auto pairs = pair_list(k);
        mpq_class cap(mpz_class(50255) * k * k * (k / 2 - 1), 100000);
        cap.canonicalize();
        for (const auto& p : pairs) {
            if (p.d1 * p.d2 == 1) continue;
            mpq_class c = compute_c1(k, p);
            CHECK(c <= cap);
            bool maximal = p.d2 == 1 && p.d1 * 2 == k;
            if (maximal) CHECK(c == cap);
        }
    }
}

TEST_CASE("compute_n1 examples") {
    CHECK(std::abs(compute_n1(6) - std::log(3601.5) / std::log(3.0)) < 1e-9);
    CHECK(std::abs(compute_n1(10) - std::log(20002.5) / std::log(3.0)) < 1e-9);
    CHECK(compute_n1(6) == doctest::Approx(7.452).epsilon(0.001));
    CHECK(compute_n1(10) == doctest::Approx(9.016).epsilon(0.001));
}

TEST_CASE("n2 <= 554 over every Table pair") {
    for (unsigned k = 6; k <= 98; k += 4) {
        for (const auto& p : pair_list(k)) {
            if (p.d1 * p.d2 == 1) continue;
            mpz_class n2 = compute_n2(k, p);
            CHECK(n2 >= 1);
            CHECK(n2 <= 554);
        }
    }
}

TEST_CASE("compute_n3_n4 values") {
    auto [n3_10, n4_10] = compute_n3_n4(10, 10);
    CHECK(n3_10 == doctest::Approx(1000.0 * std::log(10.0) / std::log(1.5 * 81.0)).epsilon(1e-9));
    CHECK(std::floor(n4_10) == 173419.0);
    auto [n3_70, n4_70] = compute_n3_n4(70, 12);
    CHECK(std::floor(n4_70) == 16550269.0);
    CHECK_THROWS(compute_n3_n4(10, 11));
}

TEST_CASE("solve_upper_bound reproduces the stated n_ineq values") {
    CHECK(solve_upper_bound(26, {26, 13, 1}, 10, mpq_class(252, 10)) == 1438387);
    CHECK(solve_upper_bound(58, {58, 29, 1}, 10, mpq_class(252, 10)) == 11043693);
    CHECK(solve_upper_bound(90, {90, 5, 1}, 12, mpq_class(234, 10)) == 29791351);
}

TEST_CASE("table_bound_n reproduces every row") {
    const std::pair<unsigned, unsigned long> rows[] = {
        {10, 173419},   {26, 1438387},  {30, 2084701},  {34, 2875394},
        {50, 7627398},  {58, 11043693}, {70, 16550269}, {74, 18440172},
        {78, 20987069}, {82, 23725616}, {90, 29791351},
    };
    for (auto [k, n0] : rows) {
        auto b = table_bound_n(k);
        REQUIRE(b.has_value());
        CAPTURE(k);
        CHECK(b->n0 == mpz_class((unsigned long)n0));
    }
}

TEST_CASE("k without nontrivial pairs is NotApplicable") {
    CHECK_FALSE(table_bound_n(6).has_value());
    CHECK_FALSE(table_bound_n(14).has_value());
    CHECK_FALSE(table_bound_n(98).has_value());
}

TEST_CASE("n0 exceeds n1, n2, n3 on every row") {
    for (unsigned k : {10u, 26u, 50u, 70u, 90u}) {
        auto b = table_bound_n(k);
        REQUIRE(b.has_value());
        CHECK(mpq_class(b->n0) > mpq_class((long)(b->n1 * 1000), 1000));
        CHECK(b->n0 > b->n2);
        CHECK(mpq_class(b->n0) > mpq_class((long)(b->n3 * 1000), 1000));
    }
}

TEST_CASE("results are stable under precision widening") {
    for (unsigned k : {10u, 26u, 82u}) {
        auto lo = table_bound_n(k, 112);
        auto hi = table_bound_n(k, 208);
        REQUIRE(lo.has_value());
        REQUIRE(hi.has_value());
        CHECK(lo->n0 == hi->n0);
        CHECK(lo->n_ineq == hi->n_ineq);
        CHECK(lo->n2 == hi->n2);
    }
}

TEST_CASE("interval arithmetic basics") {
    RInterval a = RInterval::of_mpq(mpq_class(1, 3), 64);
    RInterval b = a * RInterval::of_ui(3, 64);
    CHECK_FALSE(b.certainly_less_than(mpz_class(1)));
    CHECK(b.upper_exceeds(mpz_class(0)));
    auto fl = RInterval::of_mpq(mpq_class(7, 2), 64).determinate_floor();
    REQUIRE(fl.has_value());
    CHECK(*fl == 3);
    CHECK_THROWS(RInterval::of_mpq(mpq_class(-1), 64).log());
}
