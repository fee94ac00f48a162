#pragma once

#include <cstdint>
#include <vector>

#include "exc/exact.hpp"
#include "exc/jet.hpp"
#include "exc/polynomial.hpp"

namespace exc {

// splitmix64; per-sample streams are derived from (seed, index) so results
// do not depend on the thread count.
class SplitMix {
  public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    static SplitMix stream(std::uint64_t seed, std::uint64_t index);
    std::uint64_t next();
    // exact Bernoulli(num/den), 0 <= num <= den, den > 0
    bool bernoulli(std::uint64_t num, std::uint64_t den);

  private:
    std::uint64_t state_;
};

// Number of non-negative walks from height h to 0 in r steps (ballot
// completion count). Zero when parity or bounds fail.
Integer ballot_completions(int r, int h);

// Up-step probability of the uniform sampler at height h with r steps left,
// equal to ballot_completions(r-1, h+1) / ballot_completions(r, h).
// num/den = (h+2)(r-h) / (2r(h+1)).
void step_up_probability(int r, int h, std::uint64_t* num, std::uint64_t* den);

struct PathSample {
    std::vector<signed char> steps;  // +1 / -1, length 2n
};

// Exactly uniform over the C_n Dyck paths; deterministic given seed.
PathSample sample_dyck_uniform(int n, std::uint64_t seed);

// Jet of sum over Dyck paths of length 2n of prod_k (1-delta_k)^(x_{k,n}),
// truncated to total order K. Forward DP over (position, height); each of
// positions 1..2n contributes its height factor (endpoints are height 0, so
// the i = 0 term is trivially 1).
Jet dyck_jets(int n, int M, int K);         // OpenMP across heights
Jet dyck_jets_serial(int n, int M, int K);  // reference implementation

// Exact joint weight polynomial sum p_{n,n_1..n_M} q_1^{n_1} ... q_M^{n_M}.
// Full-polynomial mode, capped at n <= 16.
SparsePoly<Rational> dyck_polynomials(int n, int M);

// Exact integer accumulators of the k-th height moments x_{k,n} over samples.
struct McMomentSums {
    int n = 0;
    int M = 0;
    long samples = 0;
    std::vector<Integer> sum;     // sum of x_k, k = 1..M
    std::vector<Integer> sum_sq;  // sum of x_k^2
};

McMomentSums mc_moment_sums(int n, long samples, int M, std::uint64_t seed, int threads);
McMomentSums mc_moment_sums_serial(int n, long samples, int M, std::uint64_t seed);

struct McEstimate {
    double mean = 0;       // of X_{k,n} = x_{k,n} / n^((k+2)/2)
    double std_error = 0;  // standard error of the mean
};

// Monte Carlo estimates for k = 1..M; threads <= 0 picks the OpenMP default
// (capped by EXC_THREADS at the CLI layer).
std::vector<McEstimate> mc_moments(int n, long samples, int M, std::uint64_t seed,
                                   int threads = 0);
std::vector<McEstimate> mc_estimates_from_sums(const McMomentSums& sums);

}  // namespace exc
