// Test-only independent oracle: explicit enumeration of Dyck paths and their
// height-moment weights. Deliberately naive; kept apart from the library's
// DP and solver code paths.
#pragma once

#include <vector>

#include "exc/exact.hpp"
#include "exc/jet.hpp"
#include "exc/polynomial.hpp"

namespace exc::testing {

// Height profiles h(0..2n) of every Dyck path of length 2n.
inline std::vector<std::vector<int>> all_dyck_paths(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> profile{0};
    auto rec = [&](auto&& self, int pos, int h) -> void {
        if (pos == 2 * n) {
            if (h == 0) out.push_back(profile);
            return;
        }
        if (h + 1 <= 2 * n - pos - 1) {
            profile.push_back(h + 1);
            self(self, pos + 1, h + 1);
            profile.pop_back();
        }
        if (h > 0) {
            profile.push_back(h - 1);
            self(self, pos + 1, h - 1);
            profile.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

// x_k = sum over positions of h^k, k = 1..M
inline std::vector<long> height_moments(const std::vector<int>& profile, int M) {
    std::vector<long> x(M, 0);
    for (int h : profile) {
        long p = 1;
        for (int k = 0; k < M; ++k) {
            p *= h;
            x[k] += p;
        }
    }
    return x;
}

inline SparsePoly<Rational> brute_polynomial(int n, int M) {
    SparsePoly<Rational> out(M);
    for (const auto& p : all_dyck_paths(n)) {
        auto x = height_moments(p, M);
        std::vector<int> e(x.begin(), x.end());
        out.add_term(e, Rational(1));
    }
    return out;
}

// sum over paths of prod_k (1-delta_k)^(x_k), truncated
inline Jet brute_jet(int n, int M, int K) {
    auto shape = JetShape::get(M, K);
    Jet total(shape);
    Jet one_minus = Jet::constant(shape, 1);
    for (const auto& path : all_dyck_paths(n)) {
        auto x = height_moments(path, M);
        Jet w = Jet::constant(shape, 1);
        for (int k = 0; k < M; ++k) {
            Jet base(shape);
            base[0] = 1;
            MultiIndex e(M, 0);
            e[k] = 1;
            int idx = shape->index_of(e);
            if (idx >= 0) base[idx] = -1;
            w = mul(w, base.pow(static_cast<unsigned long>(x[k])));
        }
        total += w;
    }
    if (n == 0) total = Jet::constant(shape, 1);
    return total;
}

}  // namespace exc::testing
