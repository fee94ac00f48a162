#include "exc/critical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace exc {

IntervalQ iv_add(const IntervalQ& a, const IntervalQ& b) { return {a.lo + b.lo, a.hi + b.hi}; }
IntervalQ iv_sub(const IntervalQ& a, const IntervalQ& b) { return {a.lo - b.hi, a.hi - b.lo}; }
IntervalQ iv_neg(const IntervalQ& a) { return {-a.hi, -a.lo}; }

IntervalQ iv_mul(const IntervalQ& a, const IntervalQ& b) {
    Rational c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    return {std::min(std::min(c1, c2), std::min(c3, c4)),
            std::max(std::max(c1, c2), std::max(c3, c4))};
}

IntervalQ iv_div(const IntervalQ& a, const IntervalQ& b) {
    if (b.contains_zero()) throw error("interval division by an interval containing zero");
    return iv_mul(a, {Rational(1) / b.hi, Rational(1) / b.lo});
}

Rational sqrt_lower(const Rational& q) {
    if (q < 0) throw error("sqrt of negative rational");
    if (q == 0) return 0;
    // sqrt(n/d) = sqrt(n d)/d >= floor(sqrt(n d 4^p)) / (2^p d)
    const unsigned long p = 120;
    Integer nd = q.get_num() * q.get_den();
    Integer scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), nd.get_mpz_t(), 2 * p);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Integer den;
    mpz_mul_2exp(den.get_mpz_t(), q.get_den().get_mpz_t(), p);
    Rational r(root, den);
    r.canonicalize();
    return r;
}

Rational sqrt_upper(const Rational& q) {
    if (q < 0) throw error("sqrt of negative rational");
    if (q == 0) return 0;
    const unsigned long p = 120;
    Integer nd = q.get_num() * q.get_den();
    Integer scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), nd.get_mpz_t(), 2 * p);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    root += 1;
    Integer den;
    mpz_mul_2exp(den.get_mpz_t(), q.get_den().get_mpz_t(), p);
    Rational r(root, den);
    r.canonicalize();
    return r;
}

IntervalQ iv_sqrt(const IntervalQ& a) {
    if (a.lo < 0) throw error("sqrt of an interval with negative lower bound");
    Rational lo = sqrt_lower(a.lo), hi = sqrt_upper(a.hi);
    Rational exact;
    if (rational_sqrt_exact(a.lo, &exact)) lo = exact;
    if (rational_sqrt_exact(a.hi, &exact)) hi = exact;
    return {lo, hi};
}

bool CriticalData::all_exact() const {
    bool e = u_c.exact && y_c.exact && B.exact && C.exact && f0.exact;
    for (const auto& a : A) e = e && a.exact;
    for (const auto& m : mu) e = e && m.exact;
    return e;
}

SparsePoly<Rational> specialize(const QFunctionalEquation& eq) {
    SparsePoly<Rational> Q(2);
    for (const auto& [e, c] : eq.P.terms()) {
        long ydeg = 0;
        for (int j = 0; j < eq.N; ++j) ydeg += e[1 + eq.M + j];
        Q.add_term({e[0], static_cast<int>(ydeg)}, c);
    }
    return Q;
}

namespace {

// Evaluation of a bivariate polynomial at non-negative intervals; monomials
// with positive bases are monotone, so endpoint evaluation is tight.
IntervalQ eval_iv(const SparsePoly<Rational>& p, const IntervalQ& u, const IntervalQ& y) {
    if (u.lo < 0 || y.lo < 0) throw error("interval evaluation needs non-negative boxes");
    IntervalQ total;
    for (const auto& [e, c] : p.terms()) {
        Rational at_lo = c * pow_rational(u.lo, e[0]) * pow_rational(y.lo, e[1]);
        Rational at_hi = c * pow_rational(u.hi, e[0]) * pow_rational(y.hi, e[1]);
        if (c >= 0) total = iv_add(total, {at_lo, at_hi});
        else total = iv_add(total, {at_hi, at_lo});
    }
    return total;
}

// dQ/dy as a polynomial in u with UniPoly-in-y coefficients and vice versa
std::vector<UniPoly> coeffs_in_u(const SparsePoly<Rational>& p) {
    long du = p.degree_in(0);
    long dy = p.degree_in(1);
    std::vector<std::vector<Rational>> rows(du + 1, std::vector<Rational>(dy + 1, Rational(0)));
    for (const auto& [e, c] : p.terms()) rows[e[0]][e[1]] = c;
    std::vector<UniPoly> out;
    out.reserve(du + 1);
    for (auto& r : rows) out.emplace_back(std::move(r));
    return out;
}

// Sylvester resultant in u of two polynomials with UniPoly coefficients,
// by cofactor expansion (the matrices here are small).
UniPoly sylvester_resultant(const std::vector<UniPoly>& a, const std::vector<UniPoly>& b) {
    long da = static_cast<long>(a.size()) - 1;
    long db = static_cast<long>(b.size()) - 1;
    if (da < 1 || db < 1) throw error("resultant needs positive degrees");
    long n = da + db;
    std::vector<std::vector<UniPoly>> m(n, std::vector<UniPoly>(n));
    for (long r = 0; r < db; ++r)
        for (long j = 0; j <= da; ++j) m[r][r + j] = a[da - j];
    for (long r = 0; r < da; ++r)
        for (long j = 0; j <= db; ++j) m[db + r][r + j] = b[db - j];

    // expansion over column subsets, memoized by row index
    std::vector<int> cols(n);
    std::function<UniPoly(long, unsigned)> det = [&](long row, unsigned used) -> UniPoly {
        if (row == n) return UniPoly::constant(1);
        UniPoly total;
        int parity = 0;
        for (long c = 0; c < n; ++c) {
            if (used & (1u << c)) continue;
            if (!m[row][c].is_zero()) {
                UniPoly sub = det(row + 1, used | (1u << c));
                UniPoly term = m[row][c] * sub;
                if (parity % 2 == 1) term *= Rational(-1);
                total += term;
            }
            ++parity;
        }
        return total;
    };
    if (n > 20) throw error("resultant matrix too large");
    return det(0, 0u);
}

struct YCandidate {
    bool exact;
    Rational value;
    IntervalQ box;
    double approx;
};

}  // namespace

CriticalData find_critical(const SparsePoly<Rational>& Q) {
    if (Q.vars() != 2) throw error("Q must be bivariate");
    for (const auto& [e, c] : Q.terms())
        if (c < 0) throw assumption_error("Q has negative coefficients");
    if (Q.degree_in(1) < 2) throw assumption_error("Q must have y-degree >= 2");
    bool has_y_free = false;
    for (const auto& [e, c] : Q.terms())
        if (e[1] == 0) has_y_free = true;
    if (!has_y_free) throw assumption_error("Q(u,0) vanishes identically");
    long du = Q.degree_in(0);
    if (du < 1) throw assumption_error("Q does not depend on u (C would vanish)");

    SparsePoly<Rational> Qy = Q.derivative(1);
    SparsePoly<Rational> Qyy = Qy.derivative(1);
    SparsePoly<Rational> Qu = Q.derivative(0);

    // eliminate u from A = Q - y = 0 and B = Qy - 1 = 0
    UniPoly eliminant;
    UniPoly u_num, u_den;  // u = u_num(y)/u_den(y) in the linear case
    bool linear_u_formula = false;
    if (du == 1) {
        auto rows = coeffs_in_u(Q);  // rows[0] = q0(y), rows[1] = q1(y)
        UniPoly q0 = rows[0], q1 = rows[1];
        UniPoly q0d = q0.derivative(), q1d = q1.derivative();
        UniPoly y_poly({Rational(0), Rational(1)});
        if (!q1d.is_zero()) {
            // u = (1 - q0')/q1'; eliminant (1-q0') q1 + (q0 - y) q1'
            u_num = UniPoly::constant(1) - q0d;
            u_den = q1d;
            eliminant = u_num * q1 + (q0 - y_poly) * q1d;
        } else {
            // Qy independent of u: y from q0' = 1, then u = (y - q0)/q1
            u_num = y_poly - q0;
            u_den = q1;
            eliminant = q0d - UniPoly::constant(1);
        }
        linear_u_formula = true;
    } else {
        SparsePoly<Rational> A = Q;
        A.add_term({0, 1}, Rational(-1));
        SparsePoly<Rational> B = Qy;
        B.add_term({0, 0}, Rational(-1));
        eliminant = sylvester_resultant(coeffs_in_u(A), coeffs_in_u(B));
    }
    if (eliminant.is_zero()) throw assumption_error("degenerate critical system");
    eliminant.strip_root_at_zero();
    if (eliminant.degree() < 1) throw assumption_error("no positive critical root in y");

    UniPoly esf = squarefree_part(eliminant);
    const Rational target_width = Rational(1, Integer("1000000000000000000000000000000000000"));  // 1e-36
    Rational bound = esf.root_bound();

    std::vector<YCandidate> candidates;
    auto rr = rational_roots(eliminant);
    if (rr) {
        for (const Rational& r : *rr)
            if (r > 0) candidates.push_back({true, r, IntervalQ::point(r), to_double(r)});
    }
    for (auto [lo, hi] : isolate_roots(eliminant, Rational(0), bound)) {
        auto ref = refine_root(esf, lo, hi, target_width);
        if (ref.first == ref.second) {
            Rational r = ref.first;
            bool dup = false;
            for (const auto& c : candidates) dup = dup || (c.exact && c.value == r);
            if (!dup && r > 0) candidates.push_back({true, r, IntervalQ::point(r), to_double(r)});
            continue;
        }
        bool covered = false;
        if (rr)
            for (const Rational& r : *rr) covered = covered || (ref.first < r && r <= ref.second);
        if (!covered)
            candidates.push_back(
                {false, Rational(0), IntervalQ(ref.first, ref.second), IntervalQ(ref.first, ref.second).mid()});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const YCandidate& a, const YCandidate& b) { return a.approx < b.approx; });

    const Rational residual_cap = Rational(1, Integer("10000000000000000000000000000"));  // 1e-28

    // Exact path: unique u per y (dQ/dy - 1 is nondecreasing in u). Returns
    // the critical data, or nullopt with *u_is_irrational set when the y is
    // admissible territory but u needs the interval lane.
    auto try_exact = [&](const Rational& y, bool* u_is_irrational) -> std::optional<CriticalData> {
        *u_is_irrational = false;
        Rational u;
        if (linear_u_formula) {
            Rational den = u_den.eval(y);
            if (den == 0) return std::nullopt;
            u = u_num.eval(y) / den;
        } else {
            SparsePoly<Rational> Bp = Qy;
            Bp.add_term({0, 0}, Rational(-1));
            std::vector<Rational> coef;
            for (auto& rp : coeffs_in_u(Bp)) coef.push_back(rp.eval(y));
            UniPoly bu(std::move(coef));
            if (bu.degree() < 1) return std::nullopt;
            auto burr = rational_roots(bu);
            bool found = false;
            if (burr) {
                for (const Rational& r : *burr)
                    if (r > 0 && Q.eval({r, y}) == y) {
                        u = r;
                        found = true;
                        break;
                    }
            }
            if (!found) {
                if (!isolate_roots(bu, Rational(0), bu.root_bound()).empty())
                    *u_is_irrational = true;
                return std::nullopt;
            }
        }
        if (u <= 0) return std::nullopt;
        std::vector<Rational> pt{u, y};
        if (Q.eval(pt) != y || Qy.eval(pt) != 1) return std::nullopt;
        Rational Bv = Qyy.eval(pt) / 2;
        Rational Cv = Qu.eval(pt);
        if (Bv <= 0 || Cv <= 0) return std::nullopt;
        // monotone bracketing of the solve (non-negative coefficients)
        if (!(Qy.eval({u / 2, y}) <= Qy.eval(pt)))
            throw error("dQ/dy not nondecreasing in u");
        CriticalData crit;
        crit.u_c = CritScalar::from_rational(u);
        crit.y_c = CritScalar::from_rational(y);
        crit.B = CritScalar::from_rational(Bv);
        crit.C = CritScalar::from_rational(Cv);
        Rational ratio = Cv / Bv, root;
        if (rational_sqrt_exact(ratio, &root))
            crit.f0 = CritScalar::from_rational(-root);
        else
            crit.f0 = CritScalar::from_interval(iv_neg(iv_sqrt(IntervalQ::point(ratio))));
        return crit;
    };

    auto try_interval = [&](const IntervalQ& y) -> std::optional<CriticalData> {
        IntervalQ u;
        if (linear_u_formula) {
            auto eval_uni = [&](const UniPoly& p, const IntervalQ& x) {
                IntervalQ acc;
                const auto& cs = p.coeffs();
                for (auto it = cs.rbegin(); it != cs.rend(); ++it)
                    acc = iv_add(iv_mul(acc, x), IntervalQ::point(*it));
                return acc;
            };
            IntervalQ den = eval_uni(u_den, y);
            if (den.contains_zero()) return std::nullopt;
            u = iv_div(eval_uni(u_num, y), den);
        } else {
            // bisection in u with interval-evaluated signs
            SparsePoly<Rational> Bp = Qy;
            Bp.add_term({0, 0}, Rational(-1));
            Rational ulo(0), uhi(1);
            auto sign_at = [&](const Rational& uu) {
                IntervalQ v = eval_iv(Bp, IntervalQ::point(uu), y);
                if (v.hi < 0) return -1;
                if (v.lo > 0) return 1;
                return 0;
            };
            int grow = 0;
            while (sign_at(uhi) < 0 && grow++ < 200) uhi *= 2;
            if (sign_at(uhi) <= 0) return std::nullopt;
            if (sign_at(ulo) > 0) return std::nullopt;
            while (uhi - ulo > target_width) {
                Rational m = (ulo + uhi) / 2;
                int s = sign_at(m);
                if (s == 0) break;  // indeterminate at the current y width
                (s < 0 ? ulo : uhi) = m;
            }
            u = IntervalQ(ulo, uhi);
        }
        if (!(u.lo > 0)) return std::nullopt;
        IntervalQ resid1 = iv_sub(eval_iv(Q, u, y), y);
        IntervalQ resid2 = iv_sub(eval_iv(Qy, u, y), IntervalQ::point(Rational(1)));
        auto small = [&](const IntervalQ& r) {
            return abs(r.lo) < residual_cap && abs(r.hi) < residual_cap;
        };
        if (!small(resid1) || !small(resid2)) return std::nullopt;
        IntervalQ Bv = iv_mul(eval_iv(Qyy, u, y), IntervalQ::point(Rational(1, 2)));
        IntervalQ Cv = eval_iv(Qu, u, y);
        if (!(Bv.lo > 0) || !(Cv.lo > 0)) return std::nullopt;
        CriticalData crit;
        crit.u_c = CritScalar::from_interval(u);
        crit.y_c = CritScalar::from_interval(y);
        crit.B = CritScalar::from_interval(Bv);
        crit.C = CritScalar::from_interval(Cv);
        crit.f0 = CritScalar::from_interval(iv_neg(iv_sqrt(iv_div(Cv, Bv))));
        return crit;
    };

    for (const YCandidate& cand : candidates) {
        if (cand.exact) {
            bool u_irrational = false;
            if (auto crit = try_exact(cand.value, &u_irrational)) return *crit;
            if (u_irrational) {
                if (auto crit = try_interval(IntervalQ::point(cand.value))) return *crit;
            }
        } else {
            if (auto crit = try_interval(cand.box)) return *crit;
        }
    }
    throw assumption_error("no admissible critical point in (0, radius)");
}

void shift_constants(const QFunctionalEquation& eq, CriticalData* crit) {
    const int M = eq.M, N = eq.N;
    crit->A.clear();
    crit->mu.clear();
    IntervalQ u = crit->u_c.box;
    IntervalQ y = crit->y_c.box;

    // dP/dy_j at (u_c, 1, ..., 1, y_c, ..., y_c): per-term interval with
    // non-negative bases
    auto dP_dyj = [&](int j) {
        IntervalQ total;
        for (const auto& [e, c] : eq.P.terms()) {
            int yj = e[1 + M + j];
            if (yj == 0) continue;
            long ydeg_rest = -1;  // the differentiated variable loses one power
            for (int l = 0; l < N; ++l) ydeg_rest += e[1 + M + l];
            Rational cc = c * yj;
            Rational lo = cc * pow_rational(u.lo, e[0]) * pow_rational(y.lo, ydeg_rest);
            Rational hi = cc * pow_rational(u.hi, e[0]) * pow_rational(y.hi, ydeg_rest);
            total = iv_add(total, {lo, hi});
        }
        return total;
    };

    IntervalQ twoB = iv_mul(IntervalQ::point(Rational(2)), crit->B.box);
    IntervalQ denom = iv_mul(twoB, crit->f0.box);
    bool exact_inputs = crit->u_c.exact && crit->y_c.exact && crit->B.exact && crit->f0.exact;

    for (int i = 0; i < M; ++i) {
        IntervalQ Ai;
        Rational Ai_exact(0);
        for (int j = 0; j < N; ++j) {
            const auto& rows = eq.shifts[j].rows;
            int expo = rows[i][i + 1];
            if (expo == 0) continue;
            int u0e = rows[i][0];
            IntervalQ dv = {Rational(expo) * pow_rational(u.lo, u0e),
                            Rational(expo) * pow_rational(u.hi, u0e)};
            IntervalQ dp = dP_dyj(j);
            Ai = iv_add(Ai, iv_mul(dv, dp));
            if (exact_inputs) {
                Rational dv_e = Rational(expo) * pow_rational(crit->u_c.value, u0e);
                std::vector<Rational> pt(1 + M + N);
                pt[0] = crit->u_c.value;
                for (int l = 1; l <= M; ++l) pt[l] = 1;
                for (int l = 0; l < N; ++l) pt[1 + M + l] = crit->y_c.value;
                Ai_exact += dv_e * eq.P.derivative(1 + M + j).eval(pt);
            }
        }
        CritScalar a = exact_inputs ? CritScalar::from_rational(Ai_exact)
                                    : CritScalar::from_interval(Ai);
        crit->A.push_back(a);
        if (exact_inputs) {
            crit->mu.push_back(CritScalar::from_rational(
                -Ai_exact / (Rational(2) * crit->B.value * crit->f0.value)));
        } else {
            crit->mu.push_back(CritScalar::from_interval(iv_neg(iv_div(Ai, denom))));
        }
    }
}

ScalingConstants scaling_constants(const std::vector<Rational>& mu) {
    ScalingConstants out;
    Rational d(1);
    Rational mu_prod(1);
    for (std::size_t k = 1; k <= mu.size(); ++k) {
        const Rational& m = mu[k - 1];
        if (m <= 0) throw error("limit law not of excursion type in direction " + std::to_string(k));
        if (k == 1) d = Rational(1, 8) / m;
        else d = d * ratio(static_cast<long>(k), 4) / m;
        mu_prod *= m;
        out.d.push_back(d);
        SurdScalar c = SurdScalar::pow2(HalfInt(static_cast<long>(k) + 2));
        c /= SurdScalar(d);
        out.c.push_back(c);
        // paper-printed expression 2^((k+2)/2) * 2 mu_0...mu_{k-1} / (4^k k!)
        SurdScalar printed = SurdScalar::pow2(HalfInt(static_cast<long>(k) + 2));
        printed *= SurdScalar(Rational(2) * mu_prod /
                              (pow_rational(Rational(4), static_cast<long>(k)) *
                               Rational(factorial(static_cast<unsigned long>(k)))));
        out.c_printed_formula.push_back(printed);
    }
    return out;
}

ScalingConstantsF scaling_constants(const std::vector<double>& mu) {
    ScalingConstantsF out;
    double d = 1, mu_prod = 1;
    for (std::size_t k = 1; k <= mu.size(); ++k) {
        double m = mu[k - 1];
        if (!(m > 0)) throw error("limit law not of excursion type in direction " + std::to_string(k));
        if (k == 1) d = 0.125 / m;
        else d = d * (static_cast<double>(k) / 4.0) / m;
        mu_prod *= m;
        out.d.push_back(d);
        out.c.push_back(std::pow(2.0, 0.5 * (k + 2)) / d);
        out.c_printed_formula.push_back(std::pow(2.0, 0.5 * (k + 2)) * 2 * mu_prod /
                                        (std::pow(4.0, static_cast<double>(k)) *
                                         to_double(Rational(factorial(static_cast<unsigned long>(k))))));
    }
    return out;
}

Aperiodicity aperiodicity_check(const std::vector<Rational>& prefix) {
    std::vector<long> nz;
    for (std::size_t t = 0; t < prefix.size(); ++t)
        if (prefix[t] != 0) nz.push_back(static_cast<long>(t) + 1);
    if (nz.size() < 3) return Aperiodicity::Inconclusive;
    for (std::size_t a = 0; a < nz.size(); ++a)
        for (std::size_t b = a + 1; b < nz.size(); ++b)
            for (std::size_t c = b + 1; c < nz.size(); ++c) {
                Integer g;
                Integer x(nz[b] - nz[a]), y(nz[c] - nz[a]);
                mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                if (g == 1) return Aperiodicity::Detected;
            }
    return Aperiodicity::NotDetected;
}

double coefficient_asymptotic(const CriticalData& crit, HalfInt gamma_k, double f_k, long n) {
    if (n < 1) throw error("coefficient asymptotics need n >= 1");
    double g = gamma_k.to_double();
    double inv_gamma;
    if (gamma_k.is_integer() && gamma_k.twice_value <= 0) {
        return 0.0;  // 1/Gamma vanishes at the pole; next-order unavailable
    }
    inv_gamma = 1.0 / gamma_half(gamma_k).to_double();
    double uc = crit.u_c.mid();
    return f_k * inv_gamma * std::pow(uc, -(static_cast<double>(n) + g)) *
           std::pow(static_cast<double>(n), g - 1);
}

}  // namespace exc
