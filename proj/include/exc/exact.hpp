#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace exc {

// Arbitrary-precision rational, always canonical (lowest terms, positive
// denominator). gmpxx keeps the canonical form through arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonicalizing quotient (mpq_class's two-argument constructor does not
// reduce, and GMP arithmetic requires canonical operands).
Rational ratio(long num, long den);
Rational ratio(const Integer& num, const Integer& den);

// Parses "num" or "num/den" exactly. Rejects anything else.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

Rational pow_rational(const Rational& base, long e);  // e may be negative
Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);
Integer catalan(unsigned long n);  // C(2n,n)/(n+1), exact product formula

// True iff q is the square of a rational; if so *root is the non-negative root.
bool rational_sqrt_exact(const Rational& q, Rational* root);

// Exact half-integer: value = twice_value / 2.
struct HalfInt {
    long twice_value = 0;

    HalfInt() = default;
    explicit HalfInt(long twice) : twice_value(twice) {}
    static HalfInt from_int(long n) { return HalfInt(2 * n); }

    bool is_integer() const { return twice_value % 2 == 0; }
    long floor() const { return (twice_value >= 0 ? twice_value : twice_value - 1) / 2; }
    double to_double() const { return 0.5 * static_cast<double>(twice_value); }

    friend HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice_value + b.twice_value); }
    friend HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice_value - b.twice_value); }
    friend bool operator==(HalfInt a, HalfInt b) { return a.twice_value == b.twice_value; }
    friend bool operator!=(HalfInt a, HalfInt b) { return a.twice_value != b.twice_value; }
    friend bool operator<(HalfInt a, HalfInt b) { return a.twice_value < b.twice_value; }
    friend bool operator<=(HalfInt a, HalfInt b) { return a.twice_value <= b.twice_value; }
};

std::string to_string(HalfInt h);

// Exact value of the form coeff * 2^(pow2_half/2) * pi^(powpi_half/2).
// Normalisation folds whole powers of 2 into coeff, so pow2_half is 0 or 1.
// powpi_half stays as-is (pi^1 does not fold into a rational); all values
// produced by the moment formulas keep it in {0, 1}.
//
// The paper-facing form q*(2pi)^(e/2) is available exactly when
// pow2_half == powpi_half; conversion collapses to it only at presentation.
class SurdScalar {
  public:
    SurdScalar() : coeff_(0), pow2_half_(0), powpi_half_(0) {}
    SurdScalar(const Rational& q) : coeff_(q), pow2_half_(0), powpi_half_(0) {}
    SurdScalar(long n) : coeff_(n), pow2_half_(0), powpi_half_(0) {}
    static SurdScalar make(const Rational& coeff, long pow2_half, long powpi_half);
    // coeff * (2pi)^(twopi_half/2), twopi_half in {0,1}
    static SurdScalar twopi_power(const Rational& coeff, int twopi_half);
    static SurdScalar sqrt_pi() { return make(1, 0, 1); }
    // 2^h for a half-integer exponent h
    static SurdScalar pow2(HalfInt h);

    const Rational& coeff() const { return coeff_; }
    long pow2_half() const { return pow2_half_; }
    long powpi_half() const { return powpi_half_; }

    bool is_zero() const { return coeff_ == 0; }
    bool is_rational() const { return is_zero() || (pow2_half_ == 0 && powpi_half_ == 0); }
    bool is_twopi_form() const { return is_zero() || (pow2_half_ == powpi_half_ && (pow2_half_ == 0 || pow2_half_ == 1)); }
    // Requires is_twopi_form(); returns the exponent e of (2pi)^(e/2).
    int twopi_half_power() const;
    // Requires is_twopi_form(); coefficient in the q*(2pi)^(e/2) presentation.
    const Rational& twopi_coeff() const { return coeff_; }

    double to_double() const;
    std::string to_string() const;

    SurdScalar& operator*=(const SurdScalar& o);
    SurdScalar& operator/=(const SurdScalar& o);
    SurdScalar& operator+=(const SurdScalar& o);  // throws unless surd parts match
    SurdScalar& operator-=(const SurdScalar& o);
    friend SurdScalar operator*(SurdScalar a, const SurdScalar& b) { return a *= b; }
    friend SurdScalar operator/(SurdScalar a, const SurdScalar& b) { return a /= b; }
    friend SurdScalar operator+(SurdScalar a, const SurdScalar& b) { return a += b; }
    friend SurdScalar operator-(SurdScalar a, const SurdScalar& b) { return a -= b; }
    friend bool operator==(const SurdScalar& a, const SurdScalar& b);
    friend bool operator!=(const SurdScalar& a, const SurdScalar& b) { return !(a == b); }

    SurdScalar pow(unsigned long e) const;

  private:
    void normalize();
    Rational coeff_;
    long pow2_half_;
    long powpi_half_;
};

// Gamma at an exact half-integer. Rational for positive integers,
// rational * sqrt(pi) for half-odd arguments. Throws on poles (h <= 0 integer).
SurdScalar gamma_half(HalfInt h);

// Multi-index k in N_0^M. Negative entries appear only transiently in
// recursion lookups (where the table treats them as 0).
using MultiIndex = std::vector<int>;

long total_degree(const MultiIndex& k);
Integer multiindex_factorial(const MultiIndex& k);  // k_1! * ... * k_M!

// Total order of the paper: |a| < |b|, or equal degree and a_j > b_j at the
// first differing coordinate j.
bool multiindex_precedes(const MultiIndex& a, const MultiIndex& b);

// gamma_k = -1/2 + sum_i (1 + i/2) k_i  (i = 1..M)
HalfInt gamma_exponent(const MultiIndex& k);

// All k with |k| <= max_total in increasing multiindex_precedes order.
std::vector<MultiIndex> simplex_indices(int vars, int max_total);
// All k with sum_i (2+i) k_i <= weighted_cap, increasing order as above.
std::vector<MultiIndex> weighted_ball_indices(int vars, long weighted_cap);

// Stirling number of the second kind S(n, j). Requires 0 <= j <= n.
Rational stirling2(int n, int j);

}  // namespace exc
