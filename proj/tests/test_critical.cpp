#include <doctest.h>

#include <cmath>

#include "exc/critical.hpp"
#include "exc/models.hpp"

using namespace exc;

namespace {

SparsePoly<Rational> bivariate(std::initializer_list<std::tuple<int, int, Rational>> terms) {
    SparsePoly<Rational> q(2);
    for (const auto& [a, b, c] : terms) q.add_term({a, b}, c);
    return q;
}

}  // namespace

TEST_CASE("specialize collapses P to Q(u, y)") {
    auto Q = specialize(builtin_model("dyck", 3).eq);
    CHECK(Q == bivariate({{1, 0, Rational(1)}, {1, 1, Rational(2)}, {1, 2, Rational(1)}}));

    QFunctionalEquation lin;
    lin.M = 1;
    lin.N = 1;
    lin.P = SparsePoly<Rational>(3);
    lin.P.add_term({1, 0, 1}, Rational(1));  // u0 y1
    lin.shifts = {MonomialQShift::identity(1)};
    CHECK(specialize(lin) == bivariate({{1, 1, Rational(1)}}));

    QFunctionalEquation two;
    two.M = 1;
    two.N = 2;
    two.P = SparsePoly<Rational>(4);
    two.P.add_term({1, 0, 1, 1}, Rational(1));  // u0 y1 y2 -> u y^2
    two.shifts = {MonomialQShift::identity(1), MonomialQShift::identity(1)};
    CHECK(specialize(two) == bivariate({{1, 2, Rational(1)}}));
}

TEST_CASE("critical data of the builtin models is exact") {
    auto dyck = find_critical(specialize(builtin_model("dyck", 2).eq));
    CHECK(dyck.u_c.exact);
    CHECK(dyck.u_c.value == Rational(1, 4));
    CHECK(dyck.y_c.value == Rational(1));
    CHECK(dyck.B.value == Rational(1, 4));
    CHECK(dyck.C.value == Rational(4));
    CHECK(dyck.f0.value == Rational(-4));

    auto motzkin = find_critical(specialize(builtin_model("motzkin", 1).eq));
    CHECK(motzkin.u_c.value == Rational(1, 3));
    CHECK(motzkin.y_c.value == Rational(1));
    CHECK(motzkin.B.value == Rational(1, 3));
    CHECK(motzkin.C.value == Rational(3));
    CHECK(motzkin.f0.value == Rational(-3));

    auto binary = find_critical(specialize(builtin_model("binary", 1).eq));
    CHECK(binary.u_c.value == Rational(1, 2));
    CHECK(binary.y_c.value == Rational(1));
    CHECK(binary.B.value == Rational(1, 2));
    CHECK(binary.C.value == Rational(2));
    CHECK(binary.f0.value == Rational(-2));

    // f0^2 = C/B exactly in rational mode
    for (const auto* crit : {&dyck, &motzkin, &binary})
        CHECK(crit->f0.value * crit->f0.value == crit->C.value / crit->B.value);
}

TEST_CASE("Motzkin radius cross-checked by the series ratio") {
    Model m = builtin_model("motzkin", 1);
    auto row = factorial_moment_coefficients(solve_jets(m.eq, 40, 0), {0});
    double r = to_double(row[39] / row[38]);
    // m_n / m_{n-1} = (1/u_c)(1 - 3/(2n) + O(1/n^2))
    CHECK(std::abs(r * (1 + 3.0 / (2 * 40)) - 3.0) < 0.01);
    CHECK(std::abs(r - 3.0) < 0.15);
}

TEST_CASE("interval lane certifies irrational critical data") {
    // u (1 + y^2 + y^3): eliminant 1 - y^2 - 2 y^3, irrational root
    auto Q = bivariate({{1, 0, Rational(1)}, {1, 2, Rational(1)}, {1, 3, Rational(1)}});
    auto crit = find_critical(Q);
    CHECK(!crit.y_c.exact);
    CHECK(to_double(crit.y_c.box.width()) < 1e-30);
    CHECK(crit.y_c.mid() > 0.65);
    CHECK(crit.y_c.mid() < 0.66);
    // enclosure really contains the root of 1 - y^2 - 2y^3
    UniPoly elim({Rational(1), Rational(0), Rational(-1), Rational(-2)});
    CHECK(elim.sign_at(crit.y_c.box.lo) != elim.sign_at(crit.y_c.box.hi));
    CHECK(crit.B.box.lo > 0);
    CHECK(crit.C.box.lo > 0);
    CHECK(crit.f0.box.hi < 0);
    // f0^2 encloses C/B
    IntervalQ f0sq = iv_mul(crit.f0.box, crit.f0.box);
    IntervalQ cb = iv_div(crit.C.box, crit.B.box);
    CHECK(f0sq.lo <= cb.hi);
    CHECK(cb.lo <= f0sq.hi);
}

TEST_CASE("resultant elimination handles u-degree 2") {
    // u + u^2 y^2: y_c^3 = 2, u_c = y_c / 2
    auto Q = bivariate({{1, 0, Rational(1)}, {2, 2, Rational(1)}});
    auto crit = find_critical(Q);
    CHECK(!crit.y_c.exact);
    double y = crit.y_c.mid();
    CHECK(std::abs(y * y * y - 2.0) < 1e-12);
    CHECK(std::abs(crit.u_c.mid() - y / 2) < 1e-12);
}

TEST_CASE("assumption violations are rejected") {
    CHECK_THROWS_AS(find_critical(bivariate({{1, 2, Rational(1)}})), assumption_error);  // Q(u,0)=0
    CHECK_THROWS_AS(find_critical(bivariate({{1, 0, Rational(1)}, {1, 1, Rational(1)}})),
                    assumption_error);  // y-degree 1
    CHECK_THROWS_AS(find_critical(bivariate({{0, 0, Rational(1)}, {0, 2, Rational(1)}})),
                    assumption_error);  // no u dependence
    SparsePoly<Rational> neg(2);
    neg.add_term({1, 0}, Rational(1));
    neg.add_term({1, 2}, Rational(-1));
    CHECK_THROWS_AS(find_critical(neg), assumption_error);
}

TEST_CASE("shift constants of the builtins") {
    for (int M : {1, 3}) {
        Model dyck = builtin_model("dyck", M);
        auto crit = find_critical(specialize(dyck.eq));
        shift_constants(dyck.eq, &crit);
        REQUIRE(static_cast<int>(crit.mu.size()) == M);
        CHECK(crit.A[0].value == Rational(1, 4));
        CHECK(crit.mu[0].value == Rational(1, 8));
        for (int i = 1; i < M; ++i) {
            CHECK(crit.A[i].value == ratio(i + 1, 2));
            CHECK(crit.mu[i].value == ratio(i + 1, 4));
        }
    }
    Model motzkin = builtin_model("motzkin", 2);
    auto mc = find_critical(specialize(motzkin.eq));
    shift_constants(motzkin.eq, &mc);
    CHECK(mc.mu[0].value == Rational(1, 6));
    CHECK(mc.mu[1].value == Rational(1));

    // identity-only shift: all A_i vanish
    QFunctionalEquation idonly;
    idonly.M = 2;
    idonly.N = 1;
    idonly.P = SparsePoly<Rational>(4);
    idonly.P.add_term({1, 0, 0, 0}, Rational(1));
    idonly.P.add_term({1, 0, 0, 2}, Rational(1));
    idonly.shifts = {MonomialQShift::identity(2)};
    REQUIRE(validate(idonly).empty());
    auto ic = find_critical(specialize(idonly));
    shift_constants(idonly, &ic);
    for (int i = 0; i < 2; ++i) {
        CHECK(ic.A[i].value == 0);
        CHECK(ic.mu[i].value == 0);
    }
}

TEST_CASE("sum of dP/dy_j at the critical point is 1") {
    for (const char* name : {"dyck", "motzkin", "binary"}) {
        Model m = builtin_model(name, 2);
        auto crit = find_critical(specialize(m.eq));
        REQUIRE(crit.u_c.exact);
        REQUIRE(crit.y_c.exact);
        std::vector<Rational> pt(1 + m.eq.M + m.eq.N);
        pt[0] = crit.u_c.value;
        for (int i = 1; i <= m.eq.M; ++i) pt[i] = 1;
        for (int j = 0; j < m.eq.N; ++j) pt[1 + m.eq.M + j] = crit.y_c.value;
        Rational total(0);
        for (int j = 0; j < m.eq.N; ++j)
            total += m.eq.P.derivative(1 + m.eq.M + j).eval(pt);
        CHECK(total == 1);
    }
}

TEST_CASE("scaling constants") {
    auto sc = scaling_constants(std::vector<Rational>{Rational(1, 8), Rational(1, 2),
                                                      Rational(3, 4), Rational(1)});
    for (int k = 1; k <= 4; ++k) {
        CHECK(sc.d[k - 1] == 1);
        CHECK(sc.c[k - 1] == SurdScalar::pow2(HalfInt(k + 2)));
    }
    // printed-formula value differs from the matching route (16^k ratio)
    CHECK(sc.c_printed_formula[0] == SurdScalar::pow2(HalfInt(3)) * SurdScalar(Rational(1, 16)));

    auto halved = scaling_constants(std::vector<Rational>{Rational(1, 16), Rational(1, 2)});
    CHECK(halved.d[0] == 2);
    CHECK(halved.c[0] == SurdScalar::pow2(HalfInt(3)) * SurdScalar(Rational(1, 2)));

    CHECK_THROWS_AS(scaling_constants(std::vector<Rational>{Rational(0)}), error);

    auto scf = scaling_constants(std::vector<double>{0.125, 0.5, 0.75});
    for (int k = 1; k <= 3; ++k)
        CHECK(scf.c[k - 1] == doctest::Approx(std::pow(2.0, 0.5 * (k + 2))).epsilon(1e-12));
}

TEST_CASE("aperiodicity detection") {
    CHECK(aperiodicity_check({Rational(1), Rational(2), Rational(5), Rational(14)}) ==
          Aperiodicity::Detected);
    CHECK(aperiodicity_check({Rational(0), Rational(1), Rational(0), Rational(1), Rational(0),
                              Rational(2)}) == Aperiodicity::NotDetected);
    CHECK(aperiodicity_check({Rational(1), Rational(1)}) == Aperiodicity::Inconclusive);
    CHECK(aperiodicity_check({}) == Aperiodicity::Inconclusive);

    Model binary = builtin_model("binary", 1);
    auto prefix = factorial_moment_coefficients(solve_jets(binary.eq, 10, 0), {0});
    CHECK(aperiodicity_check(prefix) == Aperiodicity::NotDetected);
}

TEST_CASE("coefficient asymptotics") {
    Model dyck = builtin_model("dyck", 1);
    auto crit = find_critical(specialize(dyck.eq));

    // k = 0: prediction / C_n = 1 + 9/(8n) + O(1/n^2)
    double pred20 = coefficient_asymptotic(crit, HalfInt(-1), -4.0, 20);
    double c20 = to_double(Rational(catalan(20)));
    CHECK(pred20 / c20 > 1.03);
    CHECK(pred20 / c20 < 1.06);
    double pred200 = coefficient_asymptotic(crit, HalfInt(-1), -4.0, 200);
    double c200 = to_double(Rational(catalan(200)));
    CHECK(std::abs(pred200 / c200 - 1) < 0.006);

    // gamma = 1: exactly f * u_c^(-n-1) (Gamma(1) = 1)
    double p = coefficient_asymptotic(crit, HalfInt::from_int(1), 1.0, 10);
    CHECK(p == std::pow(4.0, 11));

    // poles of Gamma give an exactly vanishing leading term
    CHECK(coefficient_asymptotic(crit, HalfInt::from_int(0), 1.0, 5) == 0.0);
    CHECK(coefficient_asymptotic(crit, HalfInt::from_int(-2), 1.0, 5) == 0.0);
    CHECK_THROWS_AS(coefficient_asymptotic(crit, HalfInt(1), 1.0, 0), error);
}

TEST_CASE("interval helpers") {
    IntervalQ a(Rational(1, 3), Rational(1, 2));
    IntervalQ b(Rational(-2), Rational(3));
    auto m = iv_mul(a, b);
    CHECK(m.lo == Rational(-1));
    CHECK(m.hi == Rational(3, 2));
    CHECK_THROWS_AS(iv_div(a, b), error);
    auto s = iv_sqrt(IntervalQ(Rational(2), Rational(2)));
    CHECK(s.lo < s.hi);
    CHECK(to_double(s.hi - s.lo) < 1e-30);
    CHECK(s.lo * s.lo <= Rational(2));
    CHECK(s.hi * s.hi >= Rational(2));
    CHECK(iv_sqrt(IntervalQ(Rational(9, 4), Rational(9, 4))).lo == Rational(3, 2));
    CHECK_THROWS_AS(iv_sqrt(IntervalQ(Rational(-1), Rational(1))), error);
}
