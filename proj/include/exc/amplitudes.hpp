#pragma once

#include <map>
#include <vector>

#include "exc/bigfloat.hpp"
#include "exc/exact.hpp"
#include "exc/polynomial.hpp"

namespace exc {

// Parameters (M, mu_0..mu_{M-1}, f0) of the amplitude recursion. The scalar
// type is Rational when the critical data is rational, BigFloat otherwise.
template <class S>
struct RecursionParams {
    int M = 1;
    std::vector<S> mu;
    S f0 = S(-4);

    void check() const {
        if (M < 1) throw error("recursion needs M >= 1");
        if (static_cast<int>(mu.size()) != M) throw error("mu length must equal M");
        if (!(S(0) < S(0) - f0)) throw error("f0 must be negative");
        for (const S& m : mu)
            if (m < S(0)) throw error("mu entries must be non-negative");
    }
};

// Leading Puiseux amplitudes f_k (convention f_k = f_{(0,k),0}) over a
// downward-closed index set. Entries with a negative component are 0.
template <class S>
struct AmplitudeTable {
    int M = 1;
    MultiIndex max_index;  // componentwise guarantee requested by the caller
    std::map<MultiIndex, S> values;

    bool contains(const MultiIndex& k) const { return values.count(k) != 0; }
    S at_or_zero(const MultiIndex& k) const {
        for (int v : k)
            if (v < 0) return S(0);
        auto it = values.find(k);
        if (it == values.end()) throw error("amplitude index outside computed set");
        return it->second;
    }
};

// Joint moment values E[X_1^{k_1} ... X_M^{k_M}] or normalized limit moments
// m_k; exact surds.
struct MomentTable {
    int M = 1;
    std::map<MultiIndex, SurdScalar> values;

    const SurdScalar& at(const MultiIndex& k) const {
        auto it = values.find(k);
        if (it == values.end()) throw error("moment index outside computed set");
        return it->second;
    }
};

RecursionParams<Rational> dyck_params(int M);

// Amplitudes over {k : |k| <= total_cap and sum_i (2+i) k_i <= weighted_cap},
// which is closed under every dependency of the recursion; evaluation follows
// the total order so each right-hand term is already available.
template <class S>
AmplitudeTable<S> general_amplitudes_capped(const RecursionParams<S>& params, long total_cap,
                                            long weighted_cap);

// Covers at least the box {k <= max} (computes its dependency closure).
template <class S>
AmplitudeTable<S> general_amplitudes(const RecursionParams<S>& params, const MultiIndex& max);

// Same index sets via the Dyck-boundary recursion (full self-convolution
// including both endpoint terms, solved through 2 f_0 f_k); independent of
// general_amplitudes and equal to it with mu_0 = 1/8, mu_i = (i+1)/4, f0 = -4.
AmplitudeTable<Rational> excursion_amplitudes(int M, const MultiIndex& max);
AmplitudeTable<Rational> excursion_amplitudes_capped(int M, long total_cap, long weighted_cap);

// E[prod X_i^{k_i}] = k! * sqrt(2 pi) / Gamma(gamma_k) * 2^gamma_k * f_k / 2
SurdScalar excursion_moment(const AmplitudeTable<Rational>& table, const MultiIndex& k);
MomentTable excursion_moments(int M, const MultiIndex& max);
MomentTable excursion_moments_total_degree(int M, int total_cap);

// Normalized Dyck limit moments, u_c = 1/4:
// m_k = k! * f_k / (f0 * u_c^(gamma_k - gamma_0)) * Gamma(gamma_0)/Gamma(gamma_k)
SurdScalar dyck_limit_moment(const AmplitudeTable<Rational>& table, const MultiIndex& k);
MomentTable dyck_limit_moments(int M, const MultiIndex& max);

// Residual of the truncated amplitude generating function
// K(eps) = sum_{0 < |k| <= order} f_k eps^k in the reduced dominant-balance
// equation, truncated to total degree <= order (higher monomials are
// truncation artifacts); a correct table gives the zero polynomial.
// Independent polynomial substitution, not a re-run of the recursion.
template <class S>
SparsePoly<S> pde_residual(const RecursionParams<S>& params, const AmplitudeTable<S>& table,
                           int order);

// Factorial growth certificate |f_k| <= D |k|! R^|k| with R = 2^(grid_j/4).
// D is exact as its 4th power; D and R are reported as doubles rounded up.
struct GrowthFit {
    double D = 0;
    double R = 1;
    int grid_j = 0;
    Rational D4;  // exact D^4
};

GrowthFit growth_fit(const AmplitudeTable<Rational>& table);
// Exact check of |f_k|^4 <= D4 * (|k|!)^4 * 2^(grid_j*|k|) over the table.
bool growth_bound_holds(const AmplitudeTable<Rational>& table, const Rational& D4, int grid_j);

// sum_{|k| <= terms} m_k t^k / k!, evaluated in floating point from exact
// values. Throws if the table is shallower than `terms`.
double mgf_partial_sum(const MomentTable& moments, const std::vector<double>& t, int terms);

// ---- template implementations ----

template <class S>
S scalar_from_rational(const Rational& q) {
    return S(q);
}

inline Rational scalar_abs(const Rational& q) { return abs(q); }
inline BigFloat scalar_abs(const BigFloat& x) { return x.abs(); }

namespace detail {

template <class S>
S half_int_value(HalfInt h) {
    return scalar_from_rational<S>(ratio(h.twice_value, 2));
}

inline std::vector<MultiIndex> recursion_index_set(int M, long total_cap, long weighted_cap) {
    std::vector<MultiIndex> all = weighted_ball_indices(M, weighted_cap);
    std::vector<MultiIndex> out;
    for (auto& k : all)
        if (total_degree(k) <= total_cap) out.push_back(std::move(k));
    return out;  // still sorted by the total order
}

// Convolution sum_{rho != 0, rho != k, 0 <= rho <= k} f_rho f_{k-rho}
template <class S>
S self_convolution(const AmplitudeTable<S>& table, const MultiIndex& k) {
    S total(0);
    MultiIndex rho(k.size(), 0), comp(k.size(), 0);
    while (true) {
        bool endpoint = true;
        for (std::size_t i = 0; i < k.size(); ++i)
            if (rho[i] != 0) { endpoint = false; break; }
        bool at_k = true;
        for (std::size_t i = 0; i < k.size(); ++i)
            if (rho[i] != k[i]) { at_k = false; break; }
        if (!endpoint && !at_k) {
            for (std::size_t i = 0; i < k.size(); ++i) comp[i] = k[i] - rho[i];
            total += table.at_or_zero(rho) * table.at_or_zero(comp);
        }
        // next rho in the box [0, k]
        std::size_t pos = 0;
        while (pos < k.size()) {
            if (rho[pos] < k[pos]) {
                ++rho[pos];
                break;
            }
            rho[pos] = 0;
            ++pos;
        }
        if (pos == k.size()) break;
    }
    return total;
}

}  // namespace detail

template <class S>
AmplitudeTable<S> general_amplitudes_capped(const RecursionParams<S>& params, long total_cap,
                                            long weighted_cap) {
    params.check();
    if (total_cap < 0 || weighted_cap < 0) throw error("negative amplitude cap");
    if (params.f0 == S(0)) throw error("f0 must be nonzero");
    const int M = params.M;
    AmplitudeTable<S> table;
    table.M = M;
    S inv_2f0 = S(1) / (S(2) * params.f0);
    for (const MultiIndex& k : detail::recursion_index_set(M, total_cap, weighted_cap)) {
        if (total_degree(k) == 0) {
            table.values[k] = params.f0;
            continue;
        }
        MultiIndex km = k;
        km[0] -= 1;
        S value = params.mu[0] * detail::half_int_value<S>(gamma_exponent(km)) *
                  table.at_or_zero(km);
        for (int i = 1; i <= M - 1; ++i) {
            MultiIndex shifted = k;
            shifted[i] -= 1;      // k - e_{i+1} (1-based index i+1)
            shifted[i - 1] += 1;  // + e_i
            value += params.mu[i] * S(k[i - 1] + 1) * table.at_or_zero(shifted);
        }
        value -= inv_2f0 * detail::self_convolution(table, k);
        table.values[k] = value;
    }
    return table;
}

template <class S>
AmplitudeTable<S> general_amplitudes(const RecursionParams<S>& params, const MultiIndex& max) {
    if (static_cast<int>(max.size()) != params.M) throw error("max index arity mismatch");
    for (int v : max)
        if (v < 0) throw error("negative max entry");
    long wc = 0;
    for (std::size_t i = 0; i < max.size(); ++i) wc += static_cast<long>(2 + (i + 1)) * max[i];
    auto table = general_amplitudes_capped(params, total_degree(max), wc);
    table.max_index = max;
    return table;
}

template <class S>
SparsePoly<S> pde_residual(const RecursionParams<S>& params, const AmplitudeTable<S>& table,
                           int order) {
    params.check();
    const int M = params.M;
    SparsePoly<S> K(M);
    for (const auto& [k, f] : table.values) {
        long d = total_degree(k);
        if (d == 0 || d > order) continue;
        K.add_term(k, f);
    }
    // completeness of the table through `order`
    for (const MultiIndex& k : simplex_indices(M, order))
        if (total_degree(k) > 0 && !table.contains(k))
            throw error("amplitude table incomplete for residual order");

    SparsePoly<S> rhs(M);
    std::vector<int> e1(M, 0);
    e1[0] = 1;
    for (int i = 1; i <= M; ++i) {
        // (i+2)/2 * mu_0 * eps_1 eps_i dK/deps_i
        std::vector<int> e(M, 0);
        e[0] += 1;
        e[i - 1] += 1;
        SparsePoly<S> term = SparsePoly<S>::monomial(M, e, params.mu[0] *
                                                           scalar_from_rational<S>(ratio(i + 2, 2))) *
                             K.derivative(i - 1);
        rhs += term;
    }
    for (int i = 1; i <= M - 1; ++i) {
        // mu_i * eps_{i+1} dK/deps_i
        std::vector<int> e(M, 0);
        e[i] = 1;
        rhs += SparsePoly<S>::monomial(M, e, params.mu[i]) * K.derivative(i - 1);
    }
    // - mu_0/2 * eps_1 (K + f0)
    SparsePoly<S> shifted = K;
    shifted += SparsePoly<S>::constant(M, params.f0);
    rhs -= SparsePoly<S>::monomial(M, e1, params.mu[0] / S(2)) * shifted;
    // - 1/(2 f0) K^2
    SparsePoly<S> K2 = K * K;
    K2 *= S(1) / (S(2) * params.f0);
    rhs -= K2;

    return (K - rhs).truncate_total_degree(order);
}

}  // namespace exc
