#include "exc/qfe.hpp"

#include <algorithm>
#include <cmath>

namespace exc {

MonomialQShift MonomialQShift::identity(int M) {
    MonomialQShift s;
    s.rows.assign(M + 1, std::vector<int>(M + 1, 0));
    for (int k = 0; k <= M; ++k) s.rows[k][k] = 1;
    return s;
}

std::vector<std::string> validate(const QFunctionalEquation& eq) {
    std::vector<std::string> diags;
    if (eq.M < 1) diags.push_back("M must be >= 1");
    if (eq.N < 1) diags.push_back("N must be >= 1");
    if (eq.P.vars() != 1 + eq.M + eq.N) diags.push_back("P arity must be 1 + M + N");
    if (static_cast<int>(eq.shifts.size()) != eq.N)
        diags.push_back("number of shifts must equal N");
    if (!diags.empty()) return diags;

    for (const auto& [e, c] : eq.P.terms()) {
        if (c < 0) diags.push_back("P has a negative coefficient");
        if (eq.u0_exp(e) == 0 && eq.y_degree(e) == 0)
            diags.push_back("P(0,u_+,0) != 0: term with u0-exponent 0 and y-degree 0");
        if (eq.u0_exp(e) == 0 && eq.y_degree(e) == 1)
            diags.push_back("dP/dy(0,u_+,0) != 0: term with u0-exponent 0 and y-degree 1");
    }
    for (int j = 0; j < eq.N; ++j) {
        const auto& rows = eq.shifts[j].rows;
        if (static_cast<int>(rows.size()) != eq.M + 1) {
            diags.push_back("shift " + std::to_string(j + 1) + ": wrong row count");
            continue;
        }
        for (int k = 0; k <= eq.M; ++k) {
            if (static_cast<int>(rows[k].size()) != eq.M + 1) {
                diags.push_back("shift " + std::to_string(j + 1) + ": wrong row length");
                continue;
            }
            for (int l = 0; l <= eq.M; ++l)
                if (rows[k][l] < 0)
                    diags.push_back("shift " + std::to_string(j + 1) + ": negative exponent");
            if (rows[k][k] != 1)
                diags.push_back("shift " + std::to_string(j + 1) + " row " + std::to_string(k) +
                                ": dv_k/du_k(u_0) != 1");
            for (int l = 0; l < k; ++l)
                if (rows[k][l] != 0)
                    diags.push_back("shift " + std::to_string(j + 1) + " row " + std::to_string(k) +
                                    ": v_k depends on u_" + std::to_string(l));
        }
    }
    return diags;
}

namespace {

// jet of prod_{l=1..M} (1 - delta_l)^(exps[l]) for exponent row `exps`
// indexed 0..M (the u0 entry is ignored)
Jet one_minus_delta_power(const std::shared_ptr<const JetShape>& shape,
                          const std::vector<int>& exps) {
    Jet r = Jet::constant(shape, 1);
    for (int l = 1; l < static_cast<int>(exps.size()); ++l) {
        if (exps[l] == 0) continue;
        Jet base(shape);
        base[0] = 1;
        MultiIndex e(shape->vars(), 0);
        e[l - 1] = 1;
        int idx = shape->index_of(e);
        if (idx >= 0) base[idx] = -1;
        r = mul(r, base.pow(static_cast<unsigned long>(exps[l])));
    }
    return r;
}

struct TermPlan {
    Rational coeff;
    int a = 0;                 // u0 exponent
    Jet ujet;                  // jet of prod (1-delta_i)^(b_i)
    std::vector<int> factors;  // y indices (0-based shift index), with multiplicity
    // running prefix products of the factor series; prefixes[s] is the series
    // of the first s+2 factors... see extend() below
    std::vector<std::vector<Jet>> prefixes;  // prefixes[s][l] = [u0^l] prod of first s+2 factors
};

}  // namespace

SeriesSolution solve_jets(const QFunctionalEquation& eq, int n_max, int K) {
    auto diags = validate(eq);
    if (!diags.empty()) throw error("invalid q-functional equation: " + diags.front());
    if (n_max < 1) throw error("n_max must be >= 1");
    if (K < 0) throw error("K must be >= 0");
    const int M = eq.M, N = eq.N;
    auto shape = JetShape::get(M, K);
    const Jet zero(shape);

    // per-shift substitution jets and the u0 companion monomial
    std::vector<std::vector<Jet>> subst(N);
    std::vector<Jet> w(N);       // jet of the u_+ part of v_0
    std::vector<Jet> w_pow(N);   // w^n0, updated per level
    for (int j = 0; j < N; ++j) {
        const auto& rows = eq.shifts[j].rows;
        for (int i = 1; i <= M; ++i) {
            Jet s = Jet::constant(shape, 1);
            s -= one_minus_delta_power(shape, rows[i]);  // 1 - v_i(u(delta))
            subst[j].push_back(std::move(s));
        }
        w[j] = one_minus_delta_power(shape, rows[0]);
        w_pow[j] = Jet::constant(shape, 1);
    }

    std::vector<TermPlan> terms;
    for (const auto& [e, c] : eq.P.terms()) {
        TermPlan t;
        t.coeff = c;
        t.a = e[0];
        std::vector<int> b(M + 1, 0);
        for (int i = 1; i <= M; ++i) b[i] = e[i];
        t.ujet = one_minus_delta_power(shape, b);
        for (int j = 0; j < N; ++j)
            for (int r = 0; r < e[1 + M + j]; ++r) t.factors.push_back(j);
        if (t.factors.size() >= 2) t.prefixes.assign(t.factors.size() - 1, {});
        terms.push_back(std::move(t));
    }

    // H[j][n-1] = [u0^n] G(v^(j)(u)) as a jet
    std::vector<std::vector<Jet>> H(N);

    SeriesSolution sol;
    sol.M = M;
    sol.K = K;
    sol.n_max = n_max;

    auto h_level = [&](int j, int l) -> const Jet& {
        if (l < 1 || l > static_cast<int>(H[j].size())) return zero;
        return H[j][l - 1];
    };

    for (int n0 = 1; n0 <= n_max; ++n0) {
        Jet rhs(shape);
        for (TermPlan& t : terms) {
            int m = n0 - t.a;
            if (m < 0) continue;
            if (t.factors.empty()) {
                if (m == 0) {
                    Jet c = t.ujet;
                    c *= t.coeff;
                    rhs += c;
                }
                continue;
            }
            if (m < static_cast<int>(t.factors.size())) continue;  // valuation
            const Jet* prod = nullptr;
            if (t.factors.size() == 1) {
                prod = &h_level(t.factors[0], m);
            } else {
                // extend prefix products up to level m; prefixes[s][l] holds
                // [u0^l] of the product of factors 0..s+1
                for (std::size_t s = 0; s < t.prefixes.size(); ++s) {
                    auto& series = t.prefixes[s];
                    while (static_cast<int>(series.size()) <= m) {
                        int l = static_cast<int>(series.size());
                        Jet acc(shape);
                        for (int l1 = 1; l1 < l; ++l1) {
                            const Jet& left =
                                s == 0 ? h_level(t.factors[0], l1) : t.prefixes[s - 1][l1];
                            acc.add_product(left, h_level(t.factors[s + 1], l - l1));
                        }
                        series.push_back(std::move(acc));
                    }
                }
                prod = &t.prefixes.back()[m];
            }
            Jet c = mul(t.ujet, *prod);
            c *= t.coeff;
            rhs += c;
        }
        sol.jets.push_back(rhs);
        for (int j = 0; j < N; ++j) {
            w_pow[j] = mul(w_pow[j], w[j]);
            H[j].push_back(mul(rhs.compose(subst[j]), w_pow[j]));
        }
    }
    return sol;
}

std::vector<Rational> factorial_moment_coefficients(const SeriesSolution& sol,
                                                    const MultiIndex& k) {
    if (static_cast<int>(k.size()) != sol.M) throw error("multi-index arity mismatch");
    if (total_degree(k) > sol.K) throw error("jet order exceeded");
    Rational sign = total_degree(k) % 2 == 0 ? 1 : -1;
    std::vector<Rational> out;
    out.reserve(sol.n_max);
    for (int n0 = 1; n0 <= sol.n_max; ++n0) out.push_back(sign * sol.level(n0).coeff(k));
    return out;
}

Rational finite_size_moments(const SeriesSolution& sol, int n0, const MultiIndex& k) {
    if (static_cast<int>(k.size()) != sol.M) throw error("multi-index arity mismatch");
    if (total_degree(k) > sol.K)
        throw error("moment order needs jets of order " + std::to_string(total_degree(k)));
    const Jet& level = sol.level(n0);
    Rational denom = level.coeff(MultiIndex(sol.M, 0));
    if (denom == 0)
        throw undefined_size_error("no objects of size " + std::to_string(n0));
    // n^k = sum_j S(k,j) (n)_j and (n)_j counts j! g_j
    Rational num(0);
    MultiIndex j(sol.M, 0);
    while (true) {
        Rational w(1);
        for (int i = 0; i < sol.M; ++i)
            w *= stirling2(k[i], j[i]) * Rational(factorial(static_cast<unsigned long>(j[i])));
        Rational sign = total_degree(j) % 2 == 0 ? 1 : -1;
        num += w * sign * level.coeff(j);
        std::size_t pos = 0;
        while (pos < j.size()) {
            if (j[pos] < k[pos]) {
                ++j[pos];
                break;
            }
            j[pos] = 0;
            ++pos;
        }
        if (pos == j.size()) break;
    }
    return num / denom;
}

NormalizedMomentReport normalized_moment_sequence(const SeriesSolution& sol, const MultiIndex& k,
                                                  const std::vector<int>& n0s,
                                                  std::optional<double> limit) {
    NormalizedMomentReport rep;
    rep.n0s = n0s;
    rep.limit = limit;
    double exponent = gamma_exponent(k).to_double() + 0.5;  // gamma_k - gamma_0
    for (int n0 : n0s) {
        Rational m = finite_size_moments(sol, n0, k);
        double v = to_double(m) / std::pow(static_cast<double>(n0), exponent);
        rep.values.push_back(v);
        if (limit) rep.deviations.push_back(std::fabs(v - *limit));
    }
    if (limit && rep.deviations.size() >= 2) {
        // least squares on log-log, skipping exact hits
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t i = 0; i < rep.deviations.size(); ++i) {
            if (rep.deviations[i] <= 0) continue;
            double x = std::log(static_cast<double>(rep.n0s[i]));
            double y = std::log(rep.deviations[i]);
            sx += x, sy += y, sxx += x * x, sxy += x * y;
            ++n;
        }
        if (n >= 2 && n * sxx - sx * sx != 0)
            rep.trend_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return rep;
}

}  // namespace exc
