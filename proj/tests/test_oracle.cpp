#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "brute_force.hpp"
#include "exc/oracle.hpp"

using namespace exc;

TEST_CASE("DP jets match hand values and brute force") {
    Jet j3 = dyck_jets(3, 1, 2);
    CHECK(j3.coeff({0}) == Rational(5));
    CHECK(j3.coeff({1}) == Rational(-29));

    CHECK(dyck_jets(0, 1, 3) == Jet::constant(JetShape::get(1, 3), 1));

    for (int n = 0; n <= 7; ++n)
        for (int M = 1; M <= 2; ++M)
            for (int K = 0; K <= 3; ++K)
                CHECK(dyck_jets(n, M, K) == testing::brute_jet(n, M, K));
}

TEST_CASE("serial and OpenMP DP agree exactly") {
    for (int n : {17, 64})
        for (int M : {1, 2}) CHECK(dyck_jets(n, M, 2) == dyck_jets_serial(n, M, 2));
}

TEST_CASE("full weight polynomials") {
    SparsePoly<Rational> want3(1);
    want3.add_term({3}, 1);
    want3.add_term({5}, 2);
    want3.add_term({7}, 1);
    want3.add_term({9}, 1);
    CHECK(dyck_polynomials(3, 1) == want3);

    SparsePoly<Rational> want2(1);
    want2.add_term({2}, 1);
    want2.add_term({4}, 1);
    CHECK(dyck_polynomials(2, 1) == want2);

    SparsePoly<Rational> want12(2);
    want12.add_term({1, 1}, 1);
    CHECK(dyck_polynomials(1, 2) == want12);

    for (int n = 0; n <= 8; ++n) {
        auto p = dyck_polynomials(n, 1);
        CHECK(p == testing::brute_polynomial(n, 1));
        // evaluation at q=1 counts paths; derivative at 1 totals the areas
        Rational count(0), areas(0);
        for (const auto& [e, c] : p.terms()) {
            count += c;
            areas += c * Rational(e[0]);
        }
        CHECK(count == Rational(catalan(n)));
        Jet j = dyck_jets(n, 1, 1);
        CHECK(areas == -j.coeff({1}));
    }
    CHECK_THROWS_AS(dyck_polynomials(17, 1), error);
}

TEST_CASE("Duchon rank bound on polynomial degrees") {
    for (int n = 1; n <= 8; ++n) {
        auto p = dyck_polynomials(n, 2);
        CHECK(p.degree_in(0) <= n * n);
        CHECK(p.degree_in(1) <= n * n * n);
    }
}

TEST_CASE("step probability equals the ballot completion ratio") {
    CHECK(ballot_completions(0, 0) == 1);
    CHECK(ballot_completions(5, 2) == 0);  // parity
    for (int n = 1; n <= 12; ++n) CHECK(ballot_completions(2 * n, 0) == catalan(n));
    for (int r = 1; r <= 48; ++r)
        for (int h = (r % 2 == 0 ? 2 : 1); h < r; h += 2) {
            if (ballot_completions(r, h) == 0) continue;
            std::uint64_t num, den;
            step_up_probability(r, h, &num, &den);
            CHECK(Integer(num) * ballot_completions(r, h) ==
                  Integer(den) * ballot_completions(r - 1, h + 1));
        }
}

TEST_CASE("sampler produces valid, reproducible, uniform paths") {
    // n=1: the only path
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto p = sample_dyck_uniform(1, s);
        CHECK(p.steps == std::vector<signed char>{1, -1});
    }
    // validity + determinism
    for (int n : {3, 10, 37}) {
        auto a = sample_dyck_uniform(n, 99);
        auto b = sample_dyck_uniform(n, 99);
        CHECK(a.steps == b.steps);
        int h = 0;
        for (signed char st : a.steps) {
            h += st;
            CHECK(h >= 0);
        }
        CHECK(h == 0);
    }
    // n=2: P(UUDD) = 1/2 within the 3-sigma binomial band
    int uudd = 0;
    const int N = 100000;
    for (int s = 0; s < N; ++s)
        if (sample_dyck_uniform(2, 1000 + s).steps[1] == 1) ++uudd;
    double f = static_cast<double>(uudd) / N;
    CHECK(f > 0.495);
    CHECK(f < 0.505);
    // n=3: each of the 5 paths within 3 sigma of 1/5
    std::map<std::vector<signed char>, int> freq;
    for (int s = 0; s < N; ++s) freq[sample_dyck_uniform(3, 5000 + s).steps] += 1;
    CHECK(freq.size() == 5);
    double sigma = std::sqrt(0.2 * 0.8 / N);
    for (const auto& [path, c] : freq)
        CHECK(std::abs(static_cast<double>(c) / N - 0.2) < 3 * sigma);
}

TEST_CASE("height-profile reversal leaves the moments invariant") {
    for (int n : {5, 12})
        for (std::uint64_t s = 0; s < 20; ++s) {
            auto p = sample_dyck_uniform(n, s);
            std::vector<int> profile{0}, reversed{0};
            int h = 0;
            for (signed char st : p.steps) profile.push_back(h += st);
            h = 0;
            for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it)
                reversed.push_back(h -= *it);
            for (int k = 1; k <= 3; ++k)
                CHECK(testing::height_moments(profile, k) ==
                      testing::height_moments(reversed, k));
        }
}

TEST_CASE("Monte Carlo sums are exact, thread-count independent integers") {
    auto a = mc_moment_sums_serial(128, 2000, 2, 424242);
    auto b = mc_moment_sums(128, 2000, 2, 424242, 1);
    auto c = mc_moment_sums(128, 2000, 2, 424242, 4);
    CHECK(a.sum == b.sum);
    CHECK(a.sum_sq == b.sum_sq);
    CHECK(a.sum == c.sum);
    CHECK(a.sum_sq == c.sum_sq);
}

TEST_CASE("Monte Carlo estimates") {
    auto trivial = mc_moments(1, 50, 1, 7, 1);
    CHECK(trivial[0].mean == 1.0);
    CHECK(trivial[0].std_error == 0.0);

    Jet dp = dyck_jets(64, 1, 1);
    double exact = to_double(-dp.coeff({1}) / dp.coeff({0})) / std::pow(64.0, 1.5);
    auto est = mc_moments(64, 20000, 1, 20240810, 0);
    CHECK(std::abs(est[0].mean - exact) < 4 * est[0].std_error);
    CHECK(est[0].std_error > 0);

    CHECK_THROWS_AS(mc_moments(1 << 14, 10, 12, 1, 1), error);  // accumulator guard
    CHECK_THROWS_AS(mc_moments(0, 10, 1, 1, 1), error);
}
