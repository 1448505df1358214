#include <doctest.h>

#include <algorithm>
#include <random>

#include "powersum/gaussian_thue.hpp"

using namespace powersum;

TEST_CASE("beta_for reproduces the known representatives") {
    auto b5 = beta_for(5);
    REQUIRE(b5.size() == 1);
    CHECK(b5[0] == GaussianInt(1, 3));

    auto b13 = beta_for(13);
    REQUIRE(b13.size() == 1);
    CHECK(b13[0] == GaussianInt(1, 5));

    auto b41 = beta_for(41);
    REQUIRE(b41.size() == 1);
    CHECK(b41[0] == GaussianInt(1, 9));

    CHECK(beta_for(17)[0] == GaussianInt(3, 5));
    CHECK(beta_for(29)[0] == GaussianInt(3, 7));
    CHECK(beta_for(37)[0] == GaussianInt(5, 7));

    for (u64 a : {5ull, 13ull, 25ull, 41ull, 169ull})
        for (const auto& b : beta_for(a)) CHECK(b.norm() == 2 * a);

    CHECK_THROWS(beta_for(21));  // 3 | 21
    CHECK_THROWS(beta_for(4));
}

TEST_CASE("thue_forms expansion for beta = 1+5i, n = 3") {
    auto [re, im] = thue_forms(GaussianInt(1, 5), 3);
    CHECK(re.coeffs == std::vector<mpz_class>{1, -15, -3, 5});
    CHECK(im.coeffs == std::vector<mpz_class>{5, 3, -15, -1});
}

TEST_CASE("thue_forms expansion for beta = 1+3i, n = 3") {
    auto [re, im] = thue_forms(GaussianInt(1, 3), 3);
    CHECK(re.coeffs == std::vector<mpz_class>{1, -9, -3, 3});
}

TEST_CASE("form evaluation against the complex product") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> dist(-50, 50);
    for (unsigned n : {3u, 4u, 5u, 7u}) {
        GaussianInt beta(dist(rng), dist(rng));
        auto [re, im] = thue_forms(beta, n);
        for (int round = 0; round < 30; ++round) {
            mpz_class t(dist(rng)), s(dist(rng));
            GaussianInt z = beta * gaussian_pow(GaussianInt(t, s), n);
            CHECK(re.eval(t, s) == z.re);
            CHECK(im.eval(t, s) == z.im);
        }
    }
}

TEST_CASE("norm identity: |beta (t+si)^n|^2 = 2a (t^2+s^2)^n") {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<long> dist(-30, 30);
    for (u64 a : {5ull, 13ull}) {
        GaussianInt beta = beta_for(a)[0];
        for (unsigned n : {3u, 5u}) {
            auto [re, im] = thue_forms(beta, n);
            for (int round = 0; round < 20; ++round) {
                mpz_class t(dist(rng)), s(dist(rng));
                mpz_class vr = re.eval(t, s), vi = im.eval(t, s);
                mpz_class base = t * t + s * s, pw;
                mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), n);
                CHECK(vr * vr + vi * vi == 2 * a * pw);
            }
        }
    }
}

TEST_CASE("leading coefficient of the real form is Re(beta)") {
    for (u64 a : {5ull, 13ull, 41ull}) {
        GaussianInt beta = beta_for(a)[0];
        auto [re, im] = thue_forms(beta, 5);
        CHECK(re.coeffs[0] == beta.re);
        CHECK(im.coeffs[0] == beta.im);
    }
}

TEST_CASE("bounded_search finds the exceptional solutions for beta = 1+5i, n = 3") {
    auto [re, im] = thue_forms(GaussianInt(1, 5), 3);
    auto out = bounded_search(re, 1, 50);
    auto has = [&](long t, long s) {
        return std::find(out.solutions.begin(), out.solutions.end(), std::pair(t, s)) !=
               out.solutions.end();
    };
    CHECK(has(-1, -2));
    CHECK(has(-2, 3));
    CHECK(has(1, 0));
    // the negated pairs solve rhs = -1
    auto outm = bounded_search(re, -1, 50);
    auto hasm = [&](long t, long s) {
        return std::find(outm.solutions.begin(), outm.solutions.end(), std::pair(t, s)) !=
               outm.solutions.end();
    };
    CHECK(hasm(1, 2));
    CHECK(hasm(2, -3));
}

TEST_CASE("bounded_search simple cases") {
    auto [re, im] = thue_forms(GaussianInt(1, 3), 3);
    auto out = bounded_search(re, 1, 50);
    CHECK(std::find(out.solutions.begin(), out.solutions.end(), std::pair(1l, 0l)) !=
          out.solutions.end());
    auto empty = bounded_search(re, 1, 0);
    CHECK(empty.solutions.empty());
}

TEST_CASE("parallel and serial searches agree, and solutions re-verify exactly") {
    for (u64 a : {5ull, 13ull}) {
        GaussianInt beta = beta_for(a)[0];
        for (unsigned n : {3u, 4u}) {
            auto [re, im] = thue_forms(beta, n);
            for (int rhs : {1, -1}) {
                auto par = bounded_search(re, rhs, 60);
                auto ser = bounded_search_serial(re, rhs, 60);
                CHECK(par.solutions == ser.solutions);
                for (auto [t, s] : par.solutions)
                    CHECK(re.eval(mpz_class(t), mpz_class(s)) == rhs);
            }
        }
    }
}

TEST_CASE("derived y1 values for k in {26, 78}, n = 3 are 5 and 13") {
    auto [re, im] = thue_forms(GaussianInt(1, 5), 3);
    std::vector<long> y1;
    for (const BinaryForm* f : {&re, &im})
        for (int rhs : {1, -1})
            for (auto [t, s] : bounded_search(*f, rhs, 50).solutions)
                if (t != 0 && s != 0) y1.push_back(t * t + s * s);
    std::sort(y1.begin(), y1.end());
    y1.erase(std::unique(y1.begin(), y1.end()), y1.end());
    CHECK(y1 == std::vector<long>{5, 13});
}

TEST_CASE("conjugation symmetry identity per n mod 4") {
    CHECK(conjugation_symmetry_check(GaussianInt(1, 3), 3, 100));
    CHECK(conjugation_symmetry_check(GaussianInt(1, 5), 4, 100));
    CHECK(conjugation_symmetry_check(GaussianInt(1, 5), 5, 100));
    CHECK(conjugation_symmetry_check(GaussianInt(3, 7), 6, 100));
}

TEST_CASE("verify_candidate rejects the exceptional y1 values") {
    auto v5 = verify_candidate(26, 3, 13, mpz_class(5));
    CHECK_FALSE(v5.solution);
    auto v13 = verify_candidate(26, 3, 13, mpz_class(13));
    CHECK_FALSE(v13.solution);
    // 2 * 13 * 13^3 - 1 = 2 * 13^4 - 1 = 239^2: the square step passes,
    // the n-th power step must fail
    CHECK(v13.failed_step != "2a*y1^n - 1 is not a perfect square");
    auto v78 = verify_candidate(78, 3, 13, mpz_class(5));
    CHECK_FALSE(v78.solution);
    auto v3 = verify_candidate(26, 3, 13, mpz_class(3));
    CHECK_FALSE(v3.solution);
}

TEST_CASE("the k = 2 analogue square: 2 * 13^4 - 1 = 239^2") {
    mpz_class p13;
    mpz_ui_pow_ui(p13.get_mpz_t(), 13, 4);
    mpz_class M = 2 * p13 - 1;
    mpz_class root;
    REQUIRE(is_square(M, &root));
    CHECK(root == 239);
}
