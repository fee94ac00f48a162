#include "exc/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "exc/amplitudes.hpp"
#include "exc/critical.hpp"
#include "exc/models.hpp"
#include "exc/oracle.hpp"
#include "exc/qfe.hpp"

namespace exc {

namespace {

using Clock = std::chrono::steady_clock;

SurdScalar surd_rat(long num, long den) { return SurdScalar(ratio(num, den)); }
SurdScalar surd_twopi(long num, long den) {
    return SurdScalar::twopi_power(ratio(num, den), 1);
}

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) detail << "; ";
            detail << what;
            ok = false;
        }
    }
};

// ---- criterion 1: golden marginal moment tables, exact ----

CriterionResult criterion1() {
    Checker c;
    auto check_marginal = [&](int M, const std::vector<SurdScalar>& ref) {
        MultiIndex max(M, 0);
        max[M - 1] = static_cast<int>(ref.size()) - 1;
        MomentTable mt = excursion_moments(M, max);
        for (std::size_t k = 0; k < ref.size(); ++k) {
            MultiIndex idx(M, 0);
            idx[M - 1] = static_cast<int>(k);
            const SurdScalar& got = mt.at(idx);
            std::ostringstream what;
            what << "E[(X" << M << ")^" << k << "]: computed " << got.to_string()
                 << ", reference " << ref[k].to_string();
            c.expect(got == ref[k], what.str());
        }
    };
    check_marginal(1, {surd_rat(1, 1), surd_twopi(1, 4), surd_rat(5, 12), surd_twopi(15, 128),
                       surd_rat(221, 1008), surd_twopi(565, 8192)});
    check_marginal(2, {surd_rat(1, 1), surd_rat(1, 2), surd_rat(19, 60), surd_rat(631, 2520),
                       surd_rat(1219, 5040), surd_rat(92723, 332640),
                       surd_rat(1513891, 4036032)});
    check_marginal(3, {surd_rat(1, 1), surd_twopi(3, 16), surd_rat(207, 560),
                       surd_twopi(11907, 65536), surd_rat(88655283, 108908800),
                       SurdScalar::twopi_power(ratio(Integer(1165359069), Integer(1476395008)), 1)});
    check_marginal(4, {surd_rat(1, 1), surd_rat(1, 2), surd_rat(251, 840),
                       SurdScalar(ratio(Integer(288751), Integer(1201200))),
                       SurdScalar(ratio(Integer(19093793), Integer(76236160))),
                       SurdScalar(ratio(Integer("105169404203"), Integer("3259095840000")))});
    if (!c.ok)
        c.detail << " [X4 reference entries for k>=2 are the computed moments divided by k!"
                    " (k=5 also drops a digit); the path-enumeration oracle confirms the"
                    " computed values, see tests]";
    return {1, "excursion moment tables, exact", c.ok, c.detail.str(), 0};
}

// ---- criterion 2: mixed-moment depth gamma_k <= 15 ----

CriterionResult criterion2() {
    Checker c;
    // gamma_k <= 15 <=> sum (2+i) k_i <= 31
    auto table = excursion_amplitudes_capped(4, 31 / 3, 31);
    auto m1 = excursion_moments(1, {5});
    long count = 0;
    for (const MultiIndex& k : weighted_ball_indices(4, 31)) {
        if (total_degree(k) > 31 / 3) continue;
        SurdScalar m = excursion_moment(table, k);
        ++count;
        if (total_degree(k) == 0) {
            c.expect(m == SurdScalar(Rational(1)), "E at k=0 must be 1");
        } else {
            c.expect(m.to_double() > 0, "moment must be positive");
        }
        // marginal X1 entries must agree with the M=1 table
        if (k[1] == 0 && k[2] == 0 && k[3] == 0 && k[0] <= 5) {
            c.expect(m == m1.at({k[0]}), "M=4 marginal disagrees with M=1 table");
        }
    }
    c.expect(count >= 100, "unexpectedly small index set");
    std::ostringstream os;
    os << count << " mixed moments computed exactly";
    if (!c.ok) os << "; " << c.detail.str();
    return {2, "mixed-moment depth gamma_k <= 15", c.ok, os.str(), 0};
}

// ---- criterion 3: M=2 marginal MGF vs closed form ----

CriterionResult criterion3() {
    Checker c;
    MomentTable mm = excursion_moments_total_degree(2, 25);
    for (double t : {0.1, 0.5, 1.0}) {
        double partial = mgf_partial_sum(mm, {0.0, t}, 25);
        double closed = std::pow(std::sqrt(2 * t) / std::sin(std::sqrt(2 * t)), 1.5);
        std::ostringstream what;
        what << "t=" << t << ": |" << partial << " - " << closed << "| = "
             << std::abs(partial - closed) << " >= 1e-9";
        c.expect(std::abs(partial - closed) < 1e-9, what.str());
    }
    return {3, "M=2 moment generating function vs closed form", c.ok, c.detail.str(), 0};
}

// ---- criterion 4: Dyck critical data, exact ----

CriterionResult criterion4() {
    Checker c;
    const int M = 4;
    Model dyck = builtin_model("dyck", M);
    auto crit = find_critical(specialize(dyck.eq));
    shift_constants(dyck.eq, &crit);
    c.expect(crit.u_c.exact && crit.u_c.value == Rational(1, 4), "u_c != 1/4");
    c.expect(crit.y_c.exact && crit.y_c.value == Rational(1), "y_c != 1");
    c.expect(crit.B.exact && crit.B.value == Rational(1, 4), "B != 1/4");
    c.expect(crit.C.exact && crit.C.value == Rational(4), "C != 4");
    c.expect(crit.f0.exact && crit.f0.value == Rational(-4), "f0 != -4");
    c.expect(crit.mu[0].exact && crit.mu[0].value == Rational(1, 8), "mu_0 != 1/8");
    for (int i = 1; i < M; ++i)
        c.expect(crit.mu[i].exact && crit.mu[i].value == ratio(i + 1, 4),
                 "mu_" + std::to_string(i) + " != (i+1)/4");
    std::vector<Rational> mu;
    for (const auto& m : crit.mu) mu.push_back(m.value);
    auto sc = scaling_constants(mu);
    for (int k = 1; k <= M; ++k)
        c.expect(sc.c[k - 1] == SurdScalar::pow2(HalfInt(k + 2)),
                 "c_" + std::to_string(k) + " != 2^((k+2)/2)");
    return {4, "Dyck critical data and scaling constants", c.ok, c.detail.str(), 0};
}

// ---- criterion 5: oracle equivalence ----

CriterionResult criterion5() {
    Checker c;
    for (int M = 1; M <= 3; ++M) {
        Model dyck = builtin_model("dyck", M);
        for (int K = 0; K <= 4; ++K) {
            SeriesSolution sol = solve_jets(dyck.eq, 12, K);
            for (int n = 1; n <= 12; ++n) {
                if (!(dyck_jets(n, M, K) == sol.level(n))) {
                    c.expect(false, "solver vs DP mismatch at M=" + std::to_string(M) +
                                        " K=" + std::to_string(K) + " n=" + std::to_string(n));
                }
            }
        }
    }
    SparsePoly<Rational> want(1);
    want.add_term({3}, 1);
    want.add_term({5}, 2);
    want.add_term({7}, 1);
    want.add_term({9}, 1);
    c.expect(dyck_polynomials(3, 1) == want, "dyck_polynomials(3,1) != q^9+q^7+2q^5+q^3");
    Model dyck1 = builtin_model("dyck", 1);
    SeriesSolution counting = solve_jets(dyck1.eq, 20, 0);
    auto row = factorial_moment_coefficients(counting, {0});
    for (int n = 1; n <= 20; ++n)
        c.expect(row[n - 1] == Rational(catalan(n)), "counting row != Catalan at n=" + std::to_string(n));
    return {5, "solver/DP oracle equivalence", c.ok, c.detail.str(), 0};
}

// ---- criterion 6: finite-size convergence of the normalized mean area ----

CriterionResult criterion6() {
    Checker c;
    Model dyck = builtin_model("dyck", 1);
    SeriesSolution sol = solve_jets(dyck.eq, 400, 1);
    double sqrt_pi = std::sqrt(3.14159265358979323846);
    auto m1 = [&](int n) {
        return to_double(finite_size_moments(sol, n, {1})) / std::pow(n, 1.5);
    };
    double rel400 = std::abs(m1(400) / sqrt_pi - 1);
    double rel100 = std::abs(m1(100) / sqrt_pi - 1);
    std::ostringstream os;
    os << "|m1(400)/sqrt(pi)-1| = " << rel400 << ", |m1(100)/sqrt(pi)-1| = " << rel100;
    c.expect(rel400 < 0.06, os.str() + " (bound 0.06)");
    c.expect(rel400 < rel100, os.str() + " (error must shrink)");
    return {6, "finite-size convergence of normalized mean area", c.ok,
            c.ok ? os.str() : c.detail.str(), 0};
}

// ---- criterion 7: transfer-lemma coefficient asymptotics ----

CriterionResult criterion7() {
    Checker c;
    const long n = 10000;
    Rational exact = Rational(catalan(n)) * pow_rational(Rational(1, 4), n);
    double v = to_double(exact) * std::pow(static_cast<double>(n), 1.5) *
               std::sqrt(3.14159265358979323846);
    std::ostringstream os;
    os << "C_n u_c^n n^(3/2) sqrt(pi) = " << v << " at n=10^4";
    c.expect(v > 0.98 && v < 1.02, os.str() + " outside [0.98, 1.02]");
    return {7, "transfer-lemma asymptotics at n=10^4", c.ok, c.ok ? os.str() : c.detail.str(), 0};
}

// ---- criterion 8: dominant-balance residual vanishes through degree 8 ----

CriterionResult criterion8() {
    Checker c;
    auto residual_ok = [&](const RecursionParams<Rational>& params, const std::string& label) {
        auto table = general_amplitudes_capped(params, 8, (2 + params.M) * 8l);
        SparsePoly<Rational> res = pde_residual(params, table, 8);
        for (const auto& [e, coeff] : res.terms()) {
            long d = 0;
            for (int x : e) d += x;
            if (d <= 8) {
                c.expect(false, label + ": residual monomial of degree " + std::to_string(d));
                return;
            }
        }
    };
    residual_ok(dyck_params(3), "dyck M=3");
    std::mt19937 gen(20240811u);
    for (int trial = 0; trial < 2; ++trial) {
        RecursionParams<Rational> p;
        p.M = 2 + trial;
        p.f0 = ratio(-1 - static_cast<long>(gen() % 8), 2);
        for (int i = 0; i < p.M; ++i)
            p.mu.push_back(ratio(1 + static_cast<long>(gen() % 16), 8));
        residual_ok(p, "randomized set " + std::to_string(trial + 1));
    }
    return {8, "dominant-balance residual through degree 8", c.ok, c.detail.str(), 0};
}

// ---- criterion 9: growth bound on the M=2 table ----

CriterionResult criterion9() {
    Checker c;
    auto table = excursion_amplitudes_capped(2, 12, 4l * 12);
    GrowthFit fit = growth_fit(table);
    c.expect(growth_bound_holds(table, fit.D4, fit.grid_j), "certificate fails on the table");
    std::ostringstream os;
    os << "D = " << fit.D << ", R = 2^(" << fit.grid_j << "/4) = " << fit.R;
    return {9, "factorial growth bound |f_k| <= D |k|! R^|k|", c.ok,
            c.ok ? os.str() : c.detail.str(), 0};
}

// ---- criterion 10: Monte Carlo vs exact DP + sampler uniformity ----

CriterionResult criterion10() {
    Checker c;
    const int n = 2048;
    const long samples = 100000;
    const std::uint64_t seed = 0xD5CCA11E5ull;
    Jet dp = dyck_jets(n, 1, 1);
    Rational mean_area = -dp.coeff({1}) / dp.coeff({0});
    double exact = to_double(mean_area) / std::pow(static_cast<double>(n), 1.5);
    auto est = mc_moments(n, samples, 1, seed, 0);
    double dev = std::abs(est[0].mean - exact);
    std::ostringstream os;
    os << "mc mean " << est[0].mean << " vs exact " << exact << " (dev/se = "
       << dev / est[0].std_error << ")";
    c.expect(dev < 4 * est[0].std_error, os.str() + " beyond 4 standard errors");

    // chi-square uniformity, 10^6 samples, alpha = 0.001; critical values by
    // degrees of freedom C_n - 1 (1, 4, 13)
    std::map<long, double> chi_crit{{1, 10.828}, {4, 18.467}, {13, 34.528}};
    for (int m = 1; m <= 4; ++m) {
        long cn = catalan(static_cast<unsigned long>(m)).get_si();
        std::map<std::vector<signed char>, long> freq;
        const long N = 1000000;
        for (long s = 0; s < N; ++s) freq[sample_dyck_uniform(m, seed + s).steps] += 1;
        c.expect(static_cast<long>(freq.size()) == cn,
                 "sampler missed paths at n=" + std::to_string(m));
        if (cn == 1) continue;
        double expect = static_cast<double>(N) / cn;
        double chi = 0;
        for (const auto& [path, count] : freq) {
            double d = count - expect;
            chi += d * d / expect;
        }
        std::ostringstream what;
        what << "chi-square at n=" << m << ": " << chi << " > " << chi_crit.at(cn - 1);
        c.expect(chi < chi_crit.at(cn - 1), what.str());
    }
    return {10, "Monte Carlo vs DP and sampler uniformity", c.ok,
            c.ok ? os.str() : c.detail.str(), 0};
}

// ---- criterion 11: randomized invariant suites ----

CriterionResult criterion11() {
    Checker c;
    std::mt19937 gen(424242u);
    auto rnd_rat = [&](long dmax) {
        long num = 1 + static_cast<long>(gen() % 24);
        long den = 1 + static_cast<long>(gen() % dmax);
        return ratio(num, den);
    };

    // positivity: f_k > 0 for k != 0 whenever all mu_i > 0
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        RecursionParams<Rational> p;
        p.M = 1 + static_cast<int>(gen() % 3);
        p.f0 = -rnd_rat(8);
        for (int i = 0; i < p.M; ++i) p.mu.push_back(rnd_rat(8));
        auto t = general_amplitudes_capped(p, 4, (2 + p.M) * 4l);
        for (const auto& [k, f] : t.values)
            if (total_degree(k) > 0) c.expect(f > 0, "positivity failed");
    }
    // embedding consistency: M+1 variables restricted to k_{M+1} = 0
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        RecursionParams<Rational> p;
        p.M = 1 + static_cast<int>(gen() % 2);
        p.f0 = -rnd_rat(8);
        for (int i = 0; i < p.M; ++i) p.mu.push_back(rnd_rat(8));
        RecursionParams<Rational> q = p;
        q.M = p.M + 1;
        q.mu.push_back(rnd_rat(8));
        auto tp = general_amplitudes_capped(p, 4, (2 + p.M) * 4l);
        auto tq = general_amplitudes_capped(q, 4, (2 + q.M) * 4l);
        for (const auto& [k, f] : tp.values) {
            MultiIndex ext = k;
            ext.push_back(0);
            c.expect(tq.at_or_zero(ext) == f, "embedding failed");
        }
    }
    // scaling covariance: mu_0 -> mu_0 d_1, mu_i -> mu_i d_{i+1}/d_i
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        RecursionParams<Rational> p;
        p.M = 1 + static_cast<int>(gen() % 3);
        p.f0 = -rnd_rat(8);
        for (int i = 0; i < p.M; ++i) p.mu.push_back(rnd_rat(8));
        std::vector<Rational> d;
        for (int i = 0; i < p.M; ++i) d.push_back(rnd_rat(6));
        RecursionParams<Rational> q = p;
        q.mu[0] = p.mu[0] * d[0];
        for (int i = 1; i < p.M; ++i) q.mu[i] = p.mu[i] * d[i] / d[i - 1];
        auto tp = general_amplitudes_capped(p, 4, (2 + p.M) * 4l);
        auto tq = general_amplitudes_capped(q, 4, (2 + q.M) * 4l);
        for (const auto& [k, f] : tp.values) {
            Rational factor(1);
            for (int i = 0; i < p.M; ++i) factor *= pow_rational(d[i], k[i]);
            c.expect(tq.at_or_zero(k) == f * factor, "scaling covariance failed");
        }
    }
    // total order laws
    std::uniform_int_distribution<int> entry(0, 4);
    for (int trial = 0; trial < 200 && c.ok; ++trial) {
        int m = 1 + static_cast<int>(gen() % 4);
        auto rnd_idx = [&]() {
            MultiIndex k(m);
            for (int i = 0; i < m; ++i) k[i] = entry(gen);
            return k;
        };
        MultiIndex a = rnd_idx(), b = rnd_idx(), cc = rnd_idx();
        bool ab = multiindex_precedes(a, b), ba = multiindex_precedes(b, a);
        c.expect((a == b) ? (!ab && !ba) : (ab != ba), "trichotomy failed");
        if (ab && multiindex_precedes(b, cc))
            c.expect(multiindex_precedes(a, cc), "transitivity failed");
    }
    // Stirling identity: sum_j S(k,j) (n)_j = n^k, exhaustive
    for (int k = 0; k <= 8 && c.ok; ++k)
        for (long n = 0; n <= 20; ++n) {
            Rational total(0);
            for (int j = 0; j <= k; ++j) {
                Rational falling(1);
                for (int t = 0; t < j; ++t) falling *= Rational(n - t);
                total += stirling2(k, j) * falling;
            }
            c.expect(total == pow_rational(Rational(n), k), "Stirling identity failed");
        }
    return {11, "randomized invariant suites", c.ok, c.detail.str(), 0};
}

}  // namespace

CriterionResult run_criterion(int id) {
    auto start = Clock::now();
    CriterionResult r;
    switch (id) {
        case 1: r = criterion1(); break;
        case 2: r = criterion2(); break;
        case 3: r = criterion3(); break;
        case 4: r = criterion4(); break;
        case 5: r = criterion5(); break;
        case 6: r = criterion6(); break;
        case 7: r = criterion7(); break;
        case 8: r = criterion8(); break;
        case 9: r = criterion9(); break;
        case 10: r = criterion10(); break;
        case 11: r = criterion11(); break;
        default: throw error("unknown criterion id");
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    // pinned runtime bounds
    double cap = 0;
    switch (id) {
        case 1: cap = 1; break;
        case 2: cap = 10; break;
        case 5: cap = 30; break;
        case 10: cap = 60; break;
        default: cap = 0; break;
    }
    if (cap > 0 && r.seconds >= cap) {
        r.pass = false;
        r.detail += (r.detail.empty() ? "" : "; ") + std::string("runtime ") +
                    std::to_string(r.seconds) + "s exceeds " + std::to_string(cap) + "s";
    }
    return r;
}

std::vector<CriterionResult> run_acceptance(VerifyLevel level) {
    std::vector<int> ids;
    if (level == VerifyLevel::Quick) ids = {1, 4};
    else ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    std::vector<CriterionResult> out;
    for (int id : ids) out.push_back(run_criterion(id));
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

std::string format_result_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " [" << r.name << "]";
    char buf[32];
    std::snprintf(buf, sizeof(buf), " (%.2fs)", r.seconds);
    os << buf;
    if (!r.detail.empty()) os << " — " << r.detail;
    return os.str();
}

}  // namespace exc
