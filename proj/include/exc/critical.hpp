#pragma once

#include <optional>
#include <vector>

#include "exc/exact.hpp"
#include "exc/polynomial.hpp"
#include "exc/qfe.hpp"
#include "exc/unipoly.hpp"

namespace exc {

// The model violates the square-root-singularity assumption.
struct assumption_error : error {
    using error::error;
};

// Certified enclosure with rational endpoints.
struct IntervalQ {
    Rational lo, hi;

    IntervalQ() : lo(0), hi(0) {}
    IntervalQ(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {
        if (lo > hi) throw error("inverted interval");
    }
    static IntervalQ point(const Rational& v) { return IntervalQ(v, v); }

    Rational width() const { return hi - lo; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool is_point() const { return lo == hi; }
    double mid() const { return to_double((lo + hi) / 2); }
};

IntervalQ iv_add(const IntervalQ& a, const IntervalQ& b);
IntervalQ iv_sub(const IntervalQ& a, const IntervalQ& b);
IntervalQ iv_neg(const IntervalQ& a);
IntervalQ iv_mul(const IntervalQ& a, const IntervalQ& b);
IntervalQ iv_div(const IntervalQ& a, const IntervalQ& b);  // b must not contain 0
IntervalQ iv_sqrt(const IntervalQ& a);                     // a.lo >= 0
// rational outer bounds on sqrt(q), q >= 0, within 2^-120
Rational sqrt_lower(const Rational& q);
Rational sqrt_upper(const Rational& q);

// Exact rational when detected, otherwise a certified interval.
struct CritScalar {
    bool exact = false;
    Rational value;  // meaningful when exact
    IntervalQ box;   // always a valid enclosure

    static CritScalar from_rational(const Rational& v) {
        CritScalar s;
        s.exact = true;
        s.value = v;
        s.box = IntervalQ::point(v);
        return s;
    }
    static CritScalar from_interval(const IntervalQ& b) {
        CritScalar s;
        s.exact = b.is_point();
        if (s.exact) s.value = b.lo;
        s.box = b;
        return s;
    }
    double mid() const { return exact ? to_double(value) : box.mid(); }
};

struct CriticalData {
    CritScalar u_c, y_c, B, C, f0;
    std::vector<CritScalar> A;   // A_0..A_{M-1}
    std::vector<CritScalar> mu;  // mu_i = -A_i / (2 B f0)

    bool all_exact() const;
};

// Q(u, y) = P(u, 1, ..., 1, y, ..., y); 2 variables (u = 0, y = 1).
SparsePoly<Rational> specialize(const QFunctionalEquation& eq);

// Solves Q(u_c,y_c) = y_c, dQ/dy(u_c,y_c) = 1 by eliminating u (explicitly
// when Q is linear in u, by resultant otherwise) and isolating the smallest
// admissible positive root in y; rational roots are detected exactly, other
// roots are certified intervals of width <= 1e-30. B = Q_yy/2, C = Q_u,
// f0 = -sqrt(C/B). Throws assumption_error when no admissible root exists.
CriticalData find_critical(const SparsePoly<Rational>& Q);

// Fills A and mu from the shifts: A_i = sum_j dv_i^(j)/du_{i+1}(u_c vector)
// * dP/dy_j(u_c vector, y_c, ..., y_c); monomial shifts give
// dv_i/du_{i+1} = rows[i][i+1] * u_c^(rows[i][0]).
void shift_constants(const QFunctionalEquation& eq, CriticalData* crit);

// Scaling constants via the d_k-matching route:
// d_1 = (1/8)/mu_0, d_{i+1} = d_i ((i+1)/4)/mu_i, c_k = 2^((k+2)/2)/d_k.
struct ScalingConstants {
    std::vector<Rational> d;
    std::vector<SurdScalar> c;                 // exact
    std::vector<SurdScalar> c_printed_formula;  // the paper-printed expression
};
ScalingConstants scaling_constants(const std::vector<Rational>& mu);
// float lane for non-rational mu
struct ScalingConstantsF {
    std::vector<double> d;
    std::vector<double> c;
    std::vector<double> c_printed_formula;
};
ScalingConstantsF scaling_constants(const std::vector<double>& mu);

enum class Aperiodicity { Detected, NotDetected, Inconclusive };

// True detection needs indices i < j < k with nonzero coefficients and
// gcd(j-i, k-i) = 1. Fewer than 3 nonzero terms is inconclusive.
// prefix[t] is the coefficient at size t+1.
Aperiodicity aperiodicity_check(const std::vector<Rational>& prefix);

// f_k / (u_c^gamma_k Gamma(gamma_k)) * u_c^-n * n^(gamma_k - 1). Returns 0 at
// Gamma poles (the reciprocal vanishes; deeper orders are out of scope). May
// overflow to inf for large n; ratio checks should divide exactly first.
double coefficient_asymptotic(const CriticalData& crit, HalfInt gamma_k, double f_k, long n);

}  // namespace exc
