#include <doctest.h>

#include <random>
#include <set>

#include "exc/exact.hpp"

using namespace exc;

TEST_CASE("rational parsing is strict and exact") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("6/4") == Rational(3, 2));  // canonicalized
    CHECK(to_string(parse_rational("288751/1201200")) == "288751/1201200");
    CHECK_THROWS_AS(parse_rational(""), error);
    CHECK_THROWS_AS(parse_rational("3/ 4"), error);
    CHECK_THROWS_AS(parse_rational("x"), error);
    CHECK_THROWS_AS(parse_rational("1/0"), error);
    CHECK_THROWS_AS(parse_rational("1/-2"), error);
    CHECK_THROWS_AS(parse_rational("1.5"), error);
}

TEST_CASE("rational arithmetic is exact") {
    std::mt19937 gen(7);
    for (int i = 0; i < 200; ++i) {
        long a = 1 + gen() % 1000, b = 1 + gen() % 1000;
        Rational q = ratio(a, b);
        CHECK(q * ratio(b, a) == 1);
        CHECK((q + q) / q == 2);
    }
}

TEST_CASE("gamma at half-integers") {
    CHECK(gamma_half(HalfInt::from_int(1)) == SurdScalar(Rational(1)));
    CHECK(gamma_half(HalfInt(-1)) == SurdScalar::make(Rational(-2), 0, 1));  // -2 sqrt(pi)
    CHECK(gamma_half(HalfInt(5)) == SurdScalar::make(Rational(3, 4), 0, 1));
    CHECK(gamma_half(HalfInt::from_int(5)) == SurdScalar(Rational(24)));
    CHECK_THROWS_AS(gamma_half(HalfInt::from_int(0)), error);
    CHECK_THROWS_AS(gamma_half(HalfInt::from_int(-3)), error);

    // recurrence Gamma(h+1) = h Gamma(h) wherever defined
    for (long t = -9; t <= 9; t += 2) {
        HalfInt h(t);
        SurdScalar lhs = gamma_half(h + HalfInt::from_int(1));
        SurdScalar rhs = SurdScalar(Rational(t, 2)) * gamma_half(h);
        CHECK(lhs == rhs);
    }
    for (long n = 1; n <= 8; ++n) {
        SurdScalar lhs = gamma_half(HalfInt::from_int(n + 1));
        CHECK(lhs == SurdScalar(Rational(n)) * gamma_half(HalfInt::from_int(n)));
    }
}

TEST_CASE("surd arithmetic") {
    SurdScalar r2pi = SurdScalar::twopi_power(Rational(1, 4), 1);
    CHECK(r2pi.is_twopi_form());
    CHECK(r2pi.twopi_half_power() == 1);
    // (q1 sqrt(2pi)) * (q2 sqrt(2pi)) = 2 q1 q2 pi
    SurdScalar prod = r2pi * SurdScalar::twopi_power(Rational(3), 1);
    CHECK(prod.coeff() == Rational(3, 2));
    CHECK(prod.pow2_half() == 0);
    CHECK(prod.powpi_half() == 2);
    CHECK(prod.to_double() == doctest::Approx(1.5 * 3.14159265358979).epsilon(1e-12));
    CHECK(!prod.is_twopi_form());

    CHECK(SurdScalar::pow2(HalfInt(3)) == SurdScalar::make(Rational(2), 1, 0));
    CHECK(SurdScalar::pow2(HalfInt(-4)) == SurdScalar(Rational(1, 4)));

    CHECK_THROWS_AS(SurdScalar(Rational(1)) + r2pi, error);
    CHECK(r2pi + r2pi == SurdScalar::twopi_power(Rational(1, 2), 1));
    CHECK((r2pi - r2pi).is_zero());
    CHECK(SurdScalar(Rational(0)) + r2pi == r2pi);

    // division folds the 2-half-powers back into the coefficient
    SurdScalar q = SurdScalar::twopi_power(Rational(1), 1) / SurdScalar::make(Rational(1), 1, 1);
    CHECK(q == SurdScalar(Rational(1)));
}

TEST_CASE("multi-index order") {
    CHECK(multiindex_precedes({0, 0}, {1, 0}));
    CHECK(multiindex_precedes({2, 0}, {1, 1}));
    CHECK(!multiindex_precedes({1, 1}, {2, 0}));
    CHECK_THROWS_AS(multiindex_precedes({1}, {1, 0}), error);

    std::mt19937 gen(11);
    for (int trial = 0; trial < 300; ++trial) {
        int m = 1 + gen() % 4;
        auto rnd = [&]() {
            MultiIndex k(m);
            for (int i = 0; i < m; ++i) k[i] = gen() % 4;
            return k;
        };
        MultiIndex a = rnd(), b = rnd(), c = rnd();
        bool ab = multiindex_precedes(a, b), ba = multiindex_precedes(b, a);
        if (a == b) {
            CHECK(!ab);
            CHECK(!ba);
        } else {
            CHECK(ab != ba);
        }
        if (multiindex_precedes(a, b) && multiindex_precedes(b, c))
            CHECK(multiindex_precedes(a, c));
    }
}

TEST_CASE("gamma exponent") {
    CHECK(gamma_exponent({0}) == HalfInt(-1));
    CHECK(gamma_exponent({1}) == HalfInt::from_int(1));
    CHECK(gamma_exponent({0, 1}) == HalfInt(3));
    CHECK(gamma_exponent({2, 1, 3}) == HalfInt(-1 + 2 * 3 + 4 + 3 * 5));
}

namespace {

// brute-force count of set partitions of {1..n} into exactly j blocks
long partitions_into(int n, int j) {
    std::vector<int> assign(n, 0);
    long count = 0;
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (i == n) {
            if (used == j) ++count;
            return;
        }
        for (int b = 0; b <= used && b < j; ++b) {
            assign[i] = b;
            self(self, i + 1, b == used ? used + 1 : used);
        }
    };
    rec(rec, 0, 0);
    return count;
}

}  // namespace

TEST_CASE("Stirling numbers of the second kind") {
    CHECK(stirling2(3, 2) == Rational(3));
    CHECK(stirling2(4, 2) == Rational(partitions_into(4, 2)));
    CHECK(stirling2(4, 2) == Rational(7));
    for (int n = 0; n <= 8; ++n) CHECK(stirling2(n, n) == Rational(1));
    for (int n = 1; n <= 7; ++n)
        for (int j = 1; j <= n; ++j) CHECK(stirling2(n, j) == Rational(partitions_into(n, j)));
    CHECK_THROWS_AS(stirling2(3, 4), error);
    CHECK_THROWS_AS(stirling2(3, -1), error);

    // sum_j S(k,j) (n)_j = n^k exhaustively
    for (int k = 0; k <= 8; ++k)
        for (long n = 0; n <= 20; ++n) {
            Rational total(0);
            for (int j = 0; j <= k; ++j) {
                Rational falling(1);
                for (int t = 0; t < j; ++t) falling *= Rational(n - t);
                total += stirling2(k, j) * falling;
            }
            CHECK(total == pow_rational(Rational(n), k));
        }
}

TEST_CASE("index enumeration is ordered and complete") {
    auto s = simplex_indices(3, 2);
    CHECK(s.size() == 10);  // C(5,3)
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(multiindex_precedes(s[i - 1], s[i]));
    auto w = weighted_ball_indices(2, 7);  // 3 k1 + 4 k2 <= 7
    std::set<MultiIndex> got(w.begin(), w.end());
    CHECK(got == std::set<MultiIndex>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}});
}

TEST_CASE("integer helpers") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(3) == 5);
    CHECK(catalan(10) == 16796);
    CHECK(binomial(10, 3) == 120);
    CHECK(factorial(6) == 720);
    Rational root;
    CHECK(rational_sqrt_exact(Rational(16), &root));
    CHECK(root == 4);
    CHECK(rational_sqrt_exact(Rational(9, 4), &root));
    CHECK(root == Rational(3, 2));
    CHECK(!rational_sqrt_exact(Rational(2), &root));
    CHECK(!rational_sqrt_exact(Rational(1, 3), &root));
}
