#include <doctest.h>

#include <cmath>
#include <random>

#include "exc/amplitudes.hpp"
#include "exc/oracle.hpp"

using namespace exc;

namespace {

SurdScalar tp(long num, long den) { return SurdScalar::twopi_power(ratio(num, den), 1); }

// finite-size ordinary moment from a DP jet, local Stirling conversion
Rational dp_moment(const Jet& j, const MultiIndex& k, int M) {
    Rational denom = j.coeff(MultiIndex(M, 0));
    Rational num(0);
    MultiIndex t(M, 0);
    while (true) {
        Rational w(1);
        for (int i = 0; i < M; ++i)
            w *= stirling2(k[i], t[i]) * Rational(factorial(static_cast<unsigned long>(t[i])));
        num += w * Rational(total_degree(t) % 2 == 0 ? 1 : -1) * j.coeff(t);
        std::size_t pos = 0;
        while (pos < t.size()) {
            if (t[pos] < k[pos]) {
                ++t[pos];
                break;
            }
            t[pos] = 0;
            ++pos;
        }
        if (pos == t.size()) break;
    }
    return num / denom;
}

}  // namespace

TEST_CASE("hand-solved amplitude base cases stay frozen") {
    auto t1 = excursion_amplitudes(1, {2});
    CHECK(t1.at_or_zero({0}) == Rational(-4));
    CHECK(t1.at_or_zero({1}) == Rational(1, 4));
    CHECK(t1.at_or_zero({2}) == Rational(5, 128));
    CHECK(t1.at_or_zero({-1}) == Rational(0));

    auto t2 = excursion_amplitudes(2, {1, 2});
    CHECK(t2.at_or_zero({1, 0}) == Rational(1, 4));
    CHECK(t2.at_or_zero({0, 1}) == Rational(1, 8));
    CHECK(t2.at_or_zero({1, 1}) == Rational(9, 128));
    CHECK(t2.at_or_zero({0, 2}) == Rational(19, 512));
}

TEST_CASE("the two recursion routes agree entry-for-entry") {
    for (int M = 1; M <= 3; ++M) {
        auto a = excursion_amplitudes_capped(M, 6, (2 + M) * 6l);
        auto b = general_amplitudes_capped(dyck_params(M), 6, (2 + M) * 6l);
        CHECK(a.values == b.values);
    }
}

TEST_CASE("marginal excursion moments match the verified tables") {
    auto m1 = excursion_moments(1, {5});
    CHECK(m1.at({0}) == SurdScalar(Rational(1)));
    CHECK(m1.at({1}) == tp(1, 4));
    CHECK(m1.at({2}) == SurdScalar(Rational(5, 12)));
    CHECK(m1.at({3}) == tp(15, 128));
    CHECK(m1.at({4}) == SurdScalar(Rational(221, 1008)));
    CHECK(m1.at({5}) == tp(565, 8192));

    auto m2 = excursion_moments(2, {0, 6});
    CHECK(m2.at({0, 1}) == SurdScalar(Rational(1, 2)));
    CHECK(m2.at({0, 2}) == SurdScalar(Rational(19, 60)));
    CHECK(m2.at({0, 3}) == SurdScalar(Rational(631, 2520)));
    CHECK(m2.at({0, 4}) == SurdScalar(Rational(1219, 5040)));
    CHECK(m2.at({0, 5}) == SurdScalar(Rational(92723, 332640)));
    CHECK(m2.at({0, 6}) == SurdScalar(Rational(1513891, 4036032)));

    auto m3 = excursion_moments(3, {0, 0, 5});
    CHECK(m3.at({0, 0, 1}) == tp(3, 16));
    CHECK(m3.at({0, 0, 2}) == SurdScalar(Rational(207, 560)));
    CHECK(m3.at({0, 0, 3}) == tp(11907, 65536));
    CHECK(m3.at({0, 0, 4}) == SurdScalar(Rational(88655283, 108908800)));
    CHECK(m3.at({0, 0, 5}) ==
          SurdScalar::twopi_power(ratio(Integer(1165359069), Integer(1476395008)), 1));

    auto m4 = excursion_moments(4, {0, 0, 0, 5});
    CHECK(m4.at({0, 0, 0, 1}) == SurdScalar(Rational(1, 2)));
    CHECK(m4.at({0, 0, 0, 2}) == SurdScalar(Rational(251, 420)));
    CHECK(m4.at({0, 0, 0, 3}) == SurdScalar(Rational(288751, 200200)));
    CHECK(m4.at({0, 0, 0, 4}) == SurdScalar(Rational(57281379, 9529520)));
    CHECK(m4.at({0, 0, 0, 5}) ==
          SurdScalar(ratio(Integer("1051696404203"), Integer("27159132000"))));
}

TEST_CASE("X4 moments are confirmed by the path-enumeration oracle") {
    // Finite-size normalized moments must approach 2^((4+2)k/2) E[(X4)^k];
    // the competing k!-scaled values are ruled out by the trend.
    double limit2 = 64.0 * to_double(Rational(251, 420));      // 38.247...
    double alt2 = 64.0 * to_double(Rational(251, 840));        // 19.123...
    std::vector<double> vals2;
    for (int n : {100, 200, 400}) {
        Jet j = dyck_jets(n, 4, 2);
        vals2.push_back(to_double(dp_moment(j, {0, 0, 0, 2}, 4)) / std::pow(n, 6.0));
    }
    for (std::size_t i = 1; i < vals2.size(); ++i) {
        CHECK(std::abs(vals2[i] - limit2) < std::abs(vals2[i - 1] - limit2));
        CHECK(vals2[i] > alt2);  // already beyond the alternative, still rising
    }
    CHECK(std::abs(vals2.back() - limit2) / limit2 < 0.25);

    double limit3 = 512.0 * to_double(Rational(288751, 200200));
    std::vector<double> vals3;
    for (int n : {200, 400}) {
        Jet j = dyck_jets(n, 4, 3);
        vals3.push_back(to_double(dp_moment(j, {0, 0, 0, 3}, 4)) / std::pow(n, 9.0));
    }
    CHECK(std::abs(vals3[1] - limit3) < std::abs(vals3[0] - limit3));
    CHECK(vals3[1] > 512.0 * to_double(Rational(288751, 1201200)));
}

TEST_CASE("mixed moments embed across M") {
    auto m2 = excursion_moments(2, {3, 3});
    auto m1 = excursion_moments(1, {3});
    for (int k = 0; k <= 3; ++k) CHECK(m2.at({k, 0}) == m1.at({k}));
    CHECK(m2.at({0, 0}) == SurdScalar(Rational(1)));
    for (const auto& [k, v] : m2.values) CHECK(v.to_double() > 0);
}

TEST_CASE("Dyck limit moments") {
    auto lm = dyck_limit_moments(1, {2});
    CHECK(lm.at({0}) == SurdScalar(Rational(1)));
    CHECK(lm.at({1}) == SurdScalar::make(Rational(1), 0, 1));  // sqrt(pi)

    // alternative route via the excursion moments: m_k = 2^(3k/2) E[X1^k]
    auto m1 = excursion_moments(1, {2});
    CHECK(lm.at({1}) == SurdScalar::pow2(HalfInt(3)) * m1.at({1}));
    CHECK(lm.at({2}) == SurdScalar::pow2(HalfInt(6)) * m1.at({2}));

    // round trip over a 2-variable box
    auto lm2 = dyck_limit_moments(2, {2, 2});
    auto mm2 = excursion_moments(2, {2, 2});
    for (const auto& [k, v] : lm2.values) {
        SurdScalar expect = mm2.at(k);
        for (int i = 0; i < 2; ++i)
            expect *= SurdScalar::pow2(HalfInt((i + 3) * k[i]));
        CHECK(v == expect);
    }
}

TEST_CASE("dominant-balance residual vanishes and detects corruption") {
    auto params = dyck_params(2);
    auto table = general_amplitudes_capped(params, 4, 4l * 4);
    CHECK(pde_residual(params, table, 4).is_zero());
    CHECK(pde_residual(params, table, 0).is_zero());

    auto corrupted = table;
    corrupted.values[{1, 1}] += Rational(1, 7);
    auto res = pde_residual(params, corrupted, 4);
    CHECK(!res.is_zero());
    bool has_degree2 = false;
    for (const auto& [e, c] : res.terms()) {
        long d = 0;
        for (int x : e) d += x;
        if (d == 2) has_degree2 = true;
    }
    CHECK(has_degree2);

    CHECK_THROWS_AS(pde_residual(params, general_amplitudes_capped(params, 2, 8), 4), error);
}

TEST_CASE("growth fit certifies the factorial bound") {
    auto t = excursion_amplitudes_capped(1, 10, 3l * 10);
    GrowthFit fit = growth_fit(t);
    CHECK(growth_bound_holds(t, fit.D4, fit.grid_j));
    CHECK(fit.R > 0);
    CHECK(fit.D > 0);

    AmplitudeTable<Rational> single;
    single.M = 1;
    single.values[{0}] = Rational(-4);
    GrowthFit fs = growth_fit(single);
    CHECK(fs.R == 1.0);
    CHECK(fs.D == 4.0);
    CHECK(growth_bound_holds(single, fs.D4, fs.grid_j));

    auto doubled = t;
    for (auto& [k, f] : doubled.values) f *= 2;
    GrowthFit fd = growth_fit(doubled);
    CHECK(fd.grid_j == fit.grid_j);
    CHECK(fd.D4 == fit.D4 * 16);
    CHECK(fd.D == doctest::Approx(2 * fit.D).epsilon(1e-12));
    CHECK_THROWS_AS(growth_fit(AmplitudeTable<Rational>{}), error);
}

TEST_CASE("moment generating function partial sums") {
    auto mm = excursion_moments_total_degree(2, 25);
    CHECK(mgf_partial_sum(mm, {0.0, 0.0}, 25) == doctest::Approx(1.0).epsilon(1e-15));
    double t = 0.5;
    double closed = std::pow(std::sqrt(2 * t) / std::sin(std::sqrt(2 * t)), 1.5);
    CHECK(std::abs(mgf_partial_sum(mm, {0.0, t}, 25) - closed) < 1e-9);

    auto m1 = excursion_moments_total_degree(1, 25);
    double s25 = mgf_partial_sum(m1, {0.1}, 25);
    double s24 = mgf_partial_sum(m1, {0.1}, 24);
    CHECK(std::abs(s25 - s24) < 1e-12);
    CHECK_THROWS_AS(mgf_partial_sum(m1, {0.1}, 26), error);
    CHECK_THROWS_AS(mgf_partial_sum(m1, {0.1, 0.2}, 5), error);
}

TEST_CASE("parameter validation") {
    RecursionParams<Rational> p;
    p.M = 2;
    p.mu = {Rational(1, 8), Rational(1, 2)};
    p.f0 = Rational(0);
    CHECK_THROWS_AS(general_amplitudes(p, MultiIndex{1, 1}), error);
    p.f0 = Rational(-4);
    CHECK_THROWS_AS(general_amplitudes(p, MultiIndex{1, -1}), error);
    p.mu = {Rational(1, 8)};
    CHECK_THROWS_AS(general_amplitudes(p, MultiIndex{1, 1}), error);
    p.mu = {Rational(1, 8), Rational(-1)};
    CHECK_THROWS_AS(general_amplitudes(p, MultiIndex{1, 1}), error);
}

TEST_CASE("high-precision float lane tracks the rational lane") {
    RecursionParams<BigFloat> pf;
    pf.M = 2;
    pf.f0 = BigFloat(Rational(-4));
    pf.mu = {BigFloat(Rational(1, 8)), BigFloat(Rational(1, 2))};
    auto tf = general_amplitudes_capped(pf, 5, 4l * 5);
    auto tr = general_amplitudes_capped(dyck_params(2), 5, 4l * 5);
    for (const auto& [k, f] : tr.values) {
        Rational diff = tf.values.at(k).to_rational() - f;
        CHECK(abs(diff) < Rational(1, Integer("1000000000000000000000000000000000000000000000000000000000000")));
    }

    // residual in the float lane for an irrational-style parameter set
    RecursionParams<BigFloat> pg;
    pg.M = 2;
    pg.f0 = -BigFloat(Rational(3)).sqrt();
    pg.mu = {BigFloat(Rational(2)).sqrt() / BigFloat(10), BigFloat(Rational(1, 3))};
    auto tg = general_amplitudes_capped(pg, 5, 4l * 5);
    for (const auto& [k, f] : tg.values)
        if (total_degree(k) > 0) CHECK(f > BigFloat(0));
    auto res = pde_residual(pg, tg, 5);
    for (const auto& [e, c] : res.terms())
        CHECK(c.abs() < BigFloat(Rational(1, Integer("10000000000000000000000000000000000000000000000000000000000"))));
}
