#include "exc/amplitudes.hpp"

#include <algorithm>
#include <cmath>

namespace exc {

RecursionParams<Rational> dyck_params(int M) {
    RecursionParams<Rational> p;
    p.M = M;
    p.f0 = Rational(-4);
    p.mu.resize(M);
    p.mu[0] = Rational(1, 8);
    for (int i = 1; i < M; ++i) p.mu[i] = ratio(i + 1, 4);
    return p;
}

AmplitudeTable<Rational> excursion_amplitudes_capped(int M, long total_cap, long weighted_cap) {
    if (M < 1) throw error("excursion amplitudes need M >= 1");
    AmplitudeTable<Rational> table;
    table.M = M;
    for (const MultiIndex& k : detail::recursion_index_set(M, total_cap, weighted_cap)) {
        if (total_degree(k) == 0) {
            table.values[k] = Rational(-4);
            continue;
        }
        // gamma_{k-e1} f_{k-e1} + sum_i 2(i+1)(k_i+1) f_{k-e_{i+1}+e_i}
        //   + sum_{0<=l<=k} f_l f_{k-l} = 0, the endpoint terms of the full
        // convolution contributing 2 f_0 f_k = -8 f_k.
        MultiIndex km = k;
        km[0] -= 1;
        Rational acc = ratio(gamma_exponent(km).twice_value, 2) * table.at_or_zero(km);
        for (int i = 1; i <= M - 1; ++i) {
            MultiIndex shifted = k;
            shifted[i] -= 1;
            shifted[i - 1] += 1;
            acc += Rational(2 * (i + 1) * (k[i - 1] + 1)) * table.at_or_zero(shifted);
        }
        acc += detail::self_convolution(table, k);
        table.values[k] = acc / 8;
    }
    return table;
}

AmplitudeTable<Rational> excursion_amplitudes(int M, const MultiIndex& max) {
    if (static_cast<int>(max.size()) != M) throw error("max index arity mismatch");
    long wc = 0;
    for (std::size_t i = 0; i < max.size(); ++i) {
        if (max[i] < 0) throw error("negative max entry");
        wc += static_cast<long>(2 + (i + 1)) * max[i];
    }
    auto table = excursion_amplitudes_capped(M, total_degree(max), wc);
    table.max_index = max;
    return table;
}

SurdScalar excursion_moment(const AmplitudeTable<Rational>& table, const MultiIndex& k) {
    HalfInt g = gamma_exponent(k);
    SurdScalar v = SurdScalar::twopi_power(Rational(multiindex_factorial(k)), 1);
    v /= gamma_half(g);
    v *= SurdScalar::pow2(g);
    v *= SurdScalar(table.at_or_zero(k) / 2);
    return v;
}

namespace {

MomentTable moments_from(const AmplitudeTable<Rational>& table, int M,
                         SurdScalar (*one)(const AmplitudeTable<Rational>&, const MultiIndex&),
                         const std::vector<MultiIndex>& keep) {
    MomentTable mt;
    mt.M = M;
    for (const MultiIndex& k : keep) mt.values[k] = one(table, k);
    return mt;
}

std::vector<MultiIndex> box_indices(const MultiIndex& max) {
    std::vector<MultiIndex> out;
    MultiIndex k(max.size(), 0);
    while (true) {
        out.push_back(k);
        std::size_t pos = 0;
        while (pos < k.size()) {
            if (k[pos] < max[pos]) {
                ++k[pos];
                break;
            }
            k[pos] = 0;
            ++pos;
        }
        if (pos == k.size()) break;
    }
    std::sort(out.begin(), out.end(), multiindex_precedes);
    return out;
}

}  // namespace

MomentTable excursion_moments(int M, const MultiIndex& max) {
    auto table = excursion_amplitudes(M, max);
    return moments_from(table, M, excursion_moment, box_indices(max));
}

MomentTable excursion_moments_total_degree(int M, int total_cap) {
    auto table = excursion_amplitudes_capped(M, total_cap, (2 + static_cast<long>(M)) * total_cap);
    return moments_from(table, M, excursion_moment, simplex_indices(M, total_cap));
}

SurdScalar dyck_limit_moment(const AmplitudeTable<Rational>& table, const MultiIndex& k) {
    HalfInt g = gamma_exponent(k);
    long w = g.twice_value + 1;  // gamma_k - gamma_0 = w/2 with w = sum (2+i) k_i
    // u_c^(w/2) = (1/4)^(w/2) = 2^-w
    SurdScalar v(Rational(multiindex_factorial(k)) * table.at_or_zero(k) / Rational(-4));
    v /= SurdScalar::pow2(HalfInt(-2 * w));
    v *= gamma_half(HalfInt(-1));
    v /= gamma_half(g);
    return v;
}

MomentTable dyck_limit_moments(int M, const MultiIndex& max) {
    auto table = excursion_amplitudes(M, max);
    return moments_from(table, M, dyck_limit_moment, box_indices(max));
}

namespace {

// max_{|k|=d} |f_k| per total degree
std::vector<Rational> degree_maxima(const AmplitudeTable<Rational>& table) {
    long dmax = 0;
    for (const auto& [k, f] : table.values) dmax = std::max(dmax, total_degree(k));
    std::vector<Rational> m(dmax + 1, Rational(0));
    for (const auto& [k, f] : table.values) {
        Rational a = abs(f);
        long d = total_degree(k);
        if (a > m[d]) m[d] = a;
    }
    return m;
}

// exact ratio^4 at grid point j for degree d: m_d^4 / ((d!)^4 2^(j d))
Rational ratio4(const Rational& md, long d, int j) {
    Rational r = pow_rational(Rational(md), 4);
    r /= pow_rational(Rational(factorial(static_cast<unsigned long>(d))), 4);
    r /= pow_rational(Rational(2), static_cast<long>(j) * d);
    return r;
}

}  // namespace

GrowthFit growth_fit(const AmplitudeTable<Rational>& table) {
    if (table.values.empty()) throw error("growth_fit on empty table");
    std::vector<Rational> md = degree_maxima(table);
    long dmax = static_cast<long>(md.size()) - 1;
    GrowthFit fit;
    if (dmax == 0) {
        fit.grid_j = 0;
        fit.R = 1;
        fit.D4 = pow_rational(md[0], 4);
        fit.D = to_double(abs(md[0]));
        return fit;
    }
    const int j_lo = -64, j_hi = 64;
    int chosen = j_hi;
    for (int j = j_lo; j <= j_hi; ++j) {
        long argmax = 0;
        Rational best = ratio4(md[0], 0, j);
        for (long d = 1; d <= dmax; ++d) {
            Rational r = ratio4(md[d], d, j);
            if (r > best) {
                best = r;
                argmax = d;
            }
        }
        if (argmax < dmax) {
            chosen = j;
            fit.D4 = best;
            break;
        }
    }
    if (chosen == j_hi && fit.D4 == 0) {
        Rational best = ratio4(md[0], 0, chosen);
        for (long d = 1; d <= dmax; ++d) best = std::max(best, ratio4(md[d], d, chosen));
        fit.D4 = best;
    }
    fit.grid_j = chosen;
    fit.R = std::pow(2.0, chosen / 4.0);
    fit.D = std::pow(to_double(fit.D4), 0.25) * (1 + 1e-12);
    return fit;
}

bool growth_bound_holds(const AmplitudeTable<Rational>& table, const Rational& D4, int grid_j) {
    for (const auto& [k, f] : table.values) {
        long d = total_degree(k);
        Rational lhs = pow_rational(abs(f), 4);
        Rational rhs = D4 * pow_rational(Rational(factorial(static_cast<unsigned long>(d))), 4) *
                       pow_rational(Rational(2), static_cast<long>(grid_j) * d);
        if (lhs > rhs) return false;
    }
    return true;
}

double mgf_partial_sum(const MomentTable& moments, const std::vector<double>& t, int terms) {
    if (static_cast<int>(t.size()) != moments.M) throw error("mgf argument arity mismatch");
    for (const MultiIndex& k : simplex_indices(moments.M, terms))
        if (!moments.values.count(k)) throw error("moment table shallower than requested order");
    double total = 0;
    for (const auto& [k, m] : moments.values) {
        if (total_degree(k) > terms) continue;
        SurdScalar scaled = m;
        scaled /= SurdScalar(Rational(multiindex_factorial(k)));
        double term = scaled.to_double();
        for (int i = 0; i < moments.M; ++i)
            for (int j = 0; j < k[i]; ++j) term *= t[i];
        total += term;
    }
    return total;
}

}  // namespace exc
