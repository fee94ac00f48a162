#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exc/exact.hpp"
#include "exc/jet.hpp"
#include "exc/polynomial.hpp"

namespace exc {

// Monomial q-shift v_k(u) = u^(rows[k]), k = 0..M. Row k has (n_k)_k = 1 and
// (n_k)_l = 0 for l < k, which gives v(u_0) = u_0, v_0(0, u_+) = 0 and unit
// diagonal derivative automatically.
struct MonomialQShift {
    std::vector<std::vector<int>> rows;  // (M+1) rows of length (1+M)

    static MonomialQShift identity(int M);
};

// G(u) = P(u, G(v^(1)(u)), ..., G(v^(N)(u))) with polynomial P over the
// variables (u_0..u_M, y_1..y_N).
struct QFunctionalEquation {
    int M = 1;
    int N = 1;
    SparsePoly<Rational> P;  // arity 1 + M + N
    std::vector<MonomialQShift> shifts;

    int u0_exp(const std::vector<int>& e) const { return e[0]; }
    long y_degree(const std::vector<int>& e) const {
        long d = 0;
        for (int j = 0; j < N; ++j) d += e[1 + M + j];
        return d;
    }
};

// Structural axioms and non-negativity; empty means valid.
std::vector<std::string> validate(const QFunctionalEquation& eq);

// Per-n0 jets of the coefficients p_{n0}(u_+) at u_+ = 1, i.e. Taylor
// coefficients in delta_i = 1 - u_i up to total degree K.
struct SeriesSolution {
    int M = 0;
    int K = 0;
    int n_max = 0;
    std::vector<Jet> jets;  // jets[n0 - 1]

    const Jet& level(int n0) const {
        if (n0 < 1 || n0 > n_max) throw error("solution level out of range");
        return jets[n0 - 1];
    }
    friend bool operator==(const SeriesSolution& a, const SeriesSolution& b) {
        return a.M == b.M && a.K == b.K && a.n_max == b.n_max && a.jets == b.jets;
    }
};

// Coefficient-wise solve of the q-functional equation; substitution through
// the monomial shifts is exact polynomial rewriting truncated at degree K.
SeriesSolution solve_jets(const QFunctionalEquation& eq, int n_max, int K);

// [u0^n0] g_{(0,k)}(u0) = (-1)^|k| * (jet coefficient at delta^k, level n0),
// indexed by n0 = 1..n_max.
std::vector<Rational> factorial_moment_coefficients(const SeriesSolution& sol, const MultiIndex& k);

// No objects of the requested size: the moment is undefined, not zero.
struct undefined_size_error : error {
    using error::error;
};

// Exact ordinary moment mtilde_k(n0), from factorial-moment coefficients via
// Stirling conversion n^k = sum_j S(k,j) (n)_j.
Rational finite_size_moments(const SeriesSolution& sol, int n0, const MultiIndex& k);

struct NormalizedMomentReport {
    std::vector<int> n0s;
    std::vector<double> values;       // mtilde_k(n0) / n0^(gamma_k - gamma_0)
    std::optional<double> limit;      // limiting prediction, when known
    std::vector<double> deviations;   // |value - limit| when limit is known
    // least-squares slope of log|deviation| vs log n0 (expected near -1/2)
    std::optional<double> trend_exponent;
};

NormalizedMomentReport normalized_moment_sequence(const SeriesSolution& sol, const MultiIndex& k,
                                                  const std::vector<int>& n0s,
                                                  std::optional<double> limit);

}  // namespace exc
