#include "exc/oracle.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exc {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SplitMix::next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
}

SplitMix SplitMix::stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix(mix64(seed + (index + 1) * 0x9E3779B97F4A7C15ull));
}

bool SplitMix::bernoulli(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw error("bernoulli with zero denominator");
    if (num >= den) return true;
    if (num == 0) return false;
    // uniform draw in [0, den) by rejection, then exact comparison
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % den;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % den < num;
}

Integer ballot_completions(int r, int h) {
    if (r < 0 || h < 0 || h > r || (r - h) % 2 != 0) return 0;
    unsigned long d = static_cast<unsigned long>((r - h) / 2);
    Integer a = binomial(static_cast<unsigned long>(r), d);
    if (d >= 1) a -= binomial(static_cast<unsigned long>(r), d - 1);
    return a;
}

void step_up_probability(int r, int h, std::uint64_t* num, std::uint64_t* den) {
    // ballot_completions(r-1, h+1) / ballot_completions(r, h), simplified
    *num = static_cast<std::uint64_t>(h + 2) * static_cast<std::uint64_t>(r - h);
    *den = 2ull * static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(h + 1);
}

namespace {

// Shared walk: visits positions 1..2n and reports the height after each step.
template <class Visit>
void walk_uniform(int n, SplitMix& rng, Visit&& visit) {
    int h = 0;
    for (int i = 0; i < 2 * n; ++i) {
        int r = 2 * n - i;
        bool up;
        if (h == 0) {
            up = true;
        } else if (h == r) {
            up = false;
        } else {
            std::uint64_t num, den;
            step_up_probability(r, h, &num, &den);
            up = rng.bernoulli(num, den);
        }
        h += up ? 1 : -1;
        visit(up, h);
    }
}

}  // namespace

PathSample sample_dyck_uniform(int n, std::uint64_t seed) {
    if (n < 1) throw error("sample_dyck_uniform needs n >= 1");
    PathSample s;
    s.steps.reserve(2 * n);
    SplitMix rng = SplitMix::stream(seed, 0);
    walk_uniform(n, rng, [&](bool up, int) { s.steps.push_back(up ? 1 : -1); });
    return s;
}

namespace {

// Integer-coefficient jets on a shared shape, stored as flat vectors.
using IntJet = std::vector<Integer>;

// out += a * b (truncated product)
void int_jet_add_product(const JetShape& sh, const IntJet& a, const IntJet& b, IntJet& out) {
    int m = sh.size();
    for (int i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < m; ++j) {
            int t = sh.product_index(i, j);
            if (t < 0 || b[j] == 0) continue;
            mpz_addmul(out[t].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
}

// jet of prod_{k=1..M} (1 - delta_k)^(h^k): binomial expansion with big
// exponents h^k, truncated to the shape order
IntJet height_factor(const JetShape& sh, int M, long h) {
    IntJet r(sh.size(), Integer(0));
    r[0] = 1;
    Integer hk(1);
    for (int k = 1; k <= M; ++k) {
        hk *= h;
        if (hk == 0) continue;
        IntJet f(sh.size(), Integer(0));
        // (1-delta_k)^(hk): coefficient of delta_k^d is (-1)^d C(hk, d)
        Integer c(1);
        MultiIndex e(M, 0);
        for (int d = 0; d <= sh.order(); ++d) {
            e[k - 1] = d;
            int idx = sh.index_of(e);
            if (idx < 0) break;
            f[idx] = d % 2 == 0 ? c : Integer(-c);
            // C(hk, d+1) = C(hk, d) * (hk - d) / (d + 1)
            c *= hk - d;
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(d + 1));
        }
        IntJet next(sh.size(), Integer(0));
        int_jet_add_product(sh, r, f, next);
        r = std::move(next);
    }
    return r;
}

template <bool Parallel>
Jet dyck_jets_impl(int n, int M, int K) {
    if (n < 0 || M < 1 || K < 0) throw error("bad dyck_jets arguments");
    auto shape = JetShape::get(M, K);
    const JetShape& sh = *shape;
    const int js = sh.size();

    if (n == 0) return Jet::constant(shape, 1);

    std::vector<IntJet> factors(n + 2);
    for (int h = 0; h <= n; ++h) factors[h] = height_factor(sh, M, h);

#ifdef _OPENMP
    int nthreads = Parallel ? omp_get_max_threads() : 1;
#else
    int nthreads = 1;
#endif
    // per-thread scratch rows; reusing limbs keeps GMP allocation off the
    // hot path (shared malloc is the contention point under OpenMP)
    std::vector<IntJet> scratch(nthreads, IntJet(js, Integer(0)));

    // rows indexed by height; only heights with h <= min(i, 2n-i) and
    // h == i (mod 2) are live
    std::vector<IntJet> cur(n + 1, IntJet(js, Integer(0))), next(n + 1, IntJet(js, Integer(0)));
    cur[0][0] = 1;
    bool par = Parallel && nthreads > 1 && n >= 128;
    // one persistent team; each position advances with a worksharing loop
#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads) if (par)
#endif
    {
        for (int i = 1; i <= 2 * n; ++i) {
            int hmax = std::min(i, 2 * n - i);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
            for (int h = i % 2; h <= hmax; h += 2) {
#ifdef _OPENMP
                IntJet& merged = scratch[omp_get_thread_num()];
#else
                IntJet& merged = scratch[0];
#endif
                IntJet& acc = next[h];
                for (Integer& x : acc) x = 0;
                bool any = false;
                if (h > 0) {
                    for (int c = 0; c < js; ++c) merged[c] = cur[h - 1][c];
                    any = true;
                } else {
                    for (Integer& x : merged) x = 0;
                }
                if (h + 1 <= std::min(i - 1, 2 * n - (i - 1))) {
                    for (int c = 0; c < js; ++c) merged[c] += cur[h + 1][c];
                    any = true;
                }
                if (any) int_jet_add_product(sh, merged, factors[h], acc);
            }
#ifdef _OPENMP
#pragma omp single
#endif
            { std::swap(cur, next); }
        }
    }
    Jet out(shape);
    for (int c = 0; c < js; ++c) out[c] = Rational(cur[0][c]);
    return out;
}

}  // namespace

Jet dyck_jets(int n, int M, int K) { return dyck_jets_impl<true>(n, M, K); }
Jet dyck_jets_serial(int n, int M, int K) { return dyck_jets_impl<false>(n, M, K); }

SparsePoly<Rational> dyck_polynomials(int n, int M) {
    if (n < 0 || M < 1) throw error("bad dyck_polynomials arguments");
    if (n > 16) throw error("dyck_polynomials capped at n <= 16");
    using State = std::map<std::vector<int>, Integer>;
    std::vector<State> cur(n + 1), next(n + 1);
    cur[0][std::vector<int>(M, 0)] = 1;
    std::vector<long> hk(M + 1);
    for (int i = 1; i <= 2 * n; ++i) {
        int hmax = std::min(i, 2 * n - i);
        for (auto& s : next) s.clear();
        for (int h = i % 2; h <= hmax; h += 2) {
            long p = 1;
            std::vector<int> add(M);
            for (int k = 1; k <= M; ++k) {
                p *= h;
                add[k - 1] = static_cast<int>(p);
            }
            State& out = next[h];
            for (int from : {h - 1, h + 1}) {
                if (from < 0 || from > std::min(i - 1, 2 * n - (i - 1))) continue;
                for (const auto& [e, c] : cur[from]) {
                    std::vector<int> ne(M);
                    for (int k = 0; k < M; ++k) ne[k] = e[k] + add[k];
                    out[ne] += c;
                }
            }
        }
        std::swap(cur, next);
    }
    SparsePoly<Rational> poly(M);
    for (const auto& [e, c] : cur[0]) poly.add_term(e, Rational(c));
    return poly;
}

namespace {

// per-sample x_k accumulation in 128-bit, pushed to big-int totals per sample
void mc_one_sample(int n, int M, SplitMix& rng, std::vector<unsigned __int128>& x) {
    for (int k = 0; k < M; ++k) x[k] = 0;
    walk_uniform(n, rng, [&](bool, int h) {
        unsigned __int128 p = 1;
        for (int k = 0; k < M; ++k) {
            p *= static_cast<unsigned>(h);
            x[k] += p;
        }
    });
}

void add_u128(Integer& acc, unsigned __int128 v) {
    Integer big;
    mpz_import(big.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    acc += big;
}

McMomentSums mc_sums_impl(int n, long samples, int M, std::uint64_t seed, int threads) {
    if (n < 1 || samples < 1 || M < 1) throw error("bad mc arguments");
    // x_k <= 2n * n^k must fit the 128-bit per-sample accumulator
    if ((M + 2) * std::log2(static_cast<double>(n)) + 1 > 126)
        throw error("n too large for the 128-bit moment accumulator");
    McMomentSums out;
    out.n = n;
    out.M = M;
    out.samples = samples;
    out.sum.assign(M, Integer(0));
    out.sum_sq.assign(M, Integer(0));

#ifdef _OPENMP
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
#else
    int nthreads = 1;
    (void)threads;
#endif

    std::vector<McMomentSums> partial(nthreads);
    for (auto& p : partial) {
        p.sum.assign(M, Integer(0));
        p.sum_sq.assign(M, Integer(0));
    }

#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
#endif
    {
#ifdef _OPENMP
        int tid = omp_get_thread_num();
#else
        int tid = 0;
#endif
        std::vector<unsigned __int128> x(M);
        McMomentSums& mine = partial[tid];
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (long s = 0; s < samples; ++s) {
            SplitMix rng = SplitMix::stream(seed, static_cast<std::uint64_t>(s));
            mc_one_sample(n, M, rng, x);
            for (int k = 0; k < M; ++k) {
                add_u128(mine.sum[k], x[k]);
                add_u128(mine.sum_sq[k], x[k] * x[k]);
            }
        }
    }
    for (const auto& p : partial)
        for (int k = 0; k < M; ++k) {
            out.sum[k] += p.sum[k];
            out.sum_sq[k] += p.sum_sq[k];
        }
    return out;
}

}  // namespace

McMomentSums mc_moment_sums(int n, long samples, int M, std::uint64_t seed, int threads) {
    return mc_sums_impl(n, samples, M, seed, threads);
}

McMomentSums mc_moment_sums_serial(int n, long samples, int M, std::uint64_t seed) {
    if (n < 1 || samples < 1 || M < 1) throw error("bad mc arguments");
    McMomentSums out;
    out.n = n;
    out.M = M;
    out.samples = samples;
    out.sum.assign(M, Integer(0));
    out.sum_sq.assign(M, Integer(0));
    std::vector<unsigned __int128> x(M);
    for (long s = 0; s < samples; ++s) {
        SplitMix rng = SplitMix::stream(seed, static_cast<std::uint64_t>(s));
        mc_one_sample(n, M, rng, x);
        for (int k = 0; k < M; ++k) {
            add_u128(out.sum[k], x[k]);
            add_u128(out.sum_sq[k], x[k] * x[k]);
        }
    }
    return out;
}

std::vector<McEstimate> mc_estimates_from_sums(const McMomentSums& s) {
    std::vector<McEstimate> out(s.M);
    for (int k = 0; k < s.M; ++k) {
        // X = x / n^((k+2)/2); all statistics from the exact integer sums
        double scale = std::pow(static_cast<double>(s.n), 0.5 * (k + 3));
        double m1 = to_double(ratio(s.sum[k], Integer(s.samples))) / scale;
        double m2 = to_double(ratio(s.sum_sq[k], Integer(s.samples))) / (scale * scale);
        double var = std::max(0.0, m2 - m1 * m1);
        out[k].mean = m1;
        out[k].std_error = std::sqrt(var / static_cast<double>(s.samples));
    }
    return out;
}

std::vector<McEstimate> mc_moments(int n, long samples, int M, std::uint64_t seed, int threads) {
    return mc_estimates_from_sums(mc_moment_sums(n, samples, M, seed, threads));
}

}  // namespace exc
