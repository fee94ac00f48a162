#include "exc/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace exc {

Rational ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational ratio(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw error("empty rational literal");
    std::string t = s;
    // mpq_set_str accepts leading whitespace and some oddities; be strict.
    auto valid = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t i = part[0] == '-' ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    auto slash = t.find('/');
    if (slash == std::string::npos) {
        if (!valid(t)) throw error("bad rational literal: " + s);
    } else {
        std::string num = t.substr(0, slash), den = t.substr(slash + 1);
        if (!valid(num) || !valid(den)) throw error("bad rational literal: " + s);
        if (den[0] == '-') throw error("denominator must be positive: " + s);
        if (Integer(den) == 0) throw error("zero denominator: " + s);
    }
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
        throw error("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw error("0 to a negative power");
        return Rational(0);
    }
    Rational b = e > 0 ? base : Rational(1) / base;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational r(1);
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer catalan(unsigned long n) {
    Integer r = binomial(2 * n, n);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), n + 1);
    return r;
}

bool rational_sqrt_exact(const Rational& q, Rational* root) {
    if (q < 0) return false;
    const Integer& num = q.get_num();
    const Integer& den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
        Integer rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        if (root) *root = ratio(rn, rd);
        return true;
    }
    return false;
}

std::string to_string(HalfInt h) {
    if (h.is_integer()) return std::to_string(h.twice_value / 2);
    return std::to_string(h.twice_value) + "/2";
}

SurdScalar SurdScalar::make(const Rational& coeff, long pow2_half, long powpi_half) {
    SurdScalar s;
    s.coeff_ = coeff;
    s.pow2_half_ = pow2_half;
    s.powpi_half_ = powpi_half;
    s.normalize();
    return s;
}

SurdScalar SurdScalar::twopi_power(const Rational& coeff, int twopi_half) {
    if (twopi_half != 0 && twopi_half != 1) throw error("twopi_half_power must be 0 or 1");
    return make(coeff, twopi_half, twopi_half);
}

SurdScalar SurdScalar::pow2(HalfInt h) {
    long q = h.floor();
    long r = h.twice_value - 2 * q;  // 0 or 1
    return make(pow_rational(Rational(2), q), r, 0);
}

void SurdScalar::normalize() {
    if (coeff_ == 0) {
        pow2_half_ = 0;
        powpi_half_ = 0;
        return;
    }
    // fold whole powers of 2; pi half-powers are kept verbatim
    long q = pow2_half_ >= 0 ? pow2_half_ / 2 : (pow2_half_ - 1) / 2;
    if (q != 0) {
        coeff_ *= pow_rational(Rational(2), q);
        pow2_half_ -= 2 * q;
    }
}

int SurdScalar::twopi_half_power() const {
    if (!is_twopi_form())
        throw error("value " + to_string() + " is not of the form q*(2pi)^(e/2)");
    return is_zero() ? 0 : static_cast<int>(pow2_half_);
}

double SurdScalar::to_double() const {
    static const double kPi = 3.14159265358979323846264338327950288;
    double v = coeff_.get_d();
    if (pow2_half_ == 1) v *= 1.41421356237309504880168872420969808;
    else if (pow2_half_ != 0) v *= std::pow(2.0, 0.5 * pow2_half_);
    if (powpi_half_ != 0) v *= std::pow(kPi, 0.5 * powpi_half_);
    return v;
}

std::string SurdScalar::to_string() const {
    std::ostringstream os;
    os << coeff_.get_str();
    if (!is_zero() && pow2_half_ == 1 && powpi_half_ == 1) {
        os << "*sqrt(2*pi)";
    } else {
        if (pow2_half_ != 0) os << "*2^(" << pow2_half_ << "/2)";
        if (powpi_half_ != 0) os << "*pi^(" << powpi_half_ << "/2)";
    }
    return os.str();
}

SurdScalar& SurdScalar::operator*=(const SurdScalar& o) {
    coeff_ *= o.coeff_;
    pow2_half_ += o.pow2_half_;
    powpi_half_ += o.powpi_half_;
    normalize();
    return *this;
}

SurdScalar& SurdScalar::operator/=(const SurdScalar& o) {
    if (o.coeff_ == 0) throw error("division by zero surd");
    coeff_ /= o.coeff_;
    pow2_half_ -= o.pow2_half_;
    powpi_half_ -= o.powpi_half_;
    normalize();
    return *this;
}

SurdScalar& SurdScalar::operator+=(const SurdScalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) { *this = o; return *this; }
    if (pow2_half_ != o.pow2_half_ || powpi_half_ != o.powpi_half_)
        throw error("addition of incompatible surds: " + to_string() + " + " + o.to_string());
    coeff_ += o.coeff_;
    normalize();
    return *this;
}

SurdScalar& SurdScalar::operator-=(const SurdScalar& o) {
    SurdScalar neg = o;
    neg.coeff_ = -neg.coeff_;
    return *this += neg;
}

bool operator==(const SurdScalar& a, const SurdScalar& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.coeff_ == b.coeff_ && a.pow2_half_ == b.pow2_half_ && a.powpi_half_ == b.powpi_half_;
}

SurdScalar SurdScalar::pow(unsigned long e) const {
    SurdScalar r(Rational(1));
    SurdScalar b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

SurdScalar gamma_half(HalfInt h) {
    if (h.is_integer()) {
        long n = h.twice_value / 2;
        if (n <= 0) throw error("gamma pole at " + to_string(h));
        return SurdScalar(Rational(factorial(static_cast<unsigned long>(n - 1))));
    }
    // Gamma(1/2) = sqrt(pi); walk with Gamma(z+1) = z Gamma(z)
    Rational c(1);
    long t = h.twice_value;  // odd
    long z = 1;              // current argument 1/2 as twice-value
    while (z < t) {
        c *= Rational(z, 2);
        z += 2;
    }
    while (z > t) {
        z -= 2;
        c /= Rational(z, 2);
    }
    return SurdScalar::make(c, 0, 1);
}

long total_degree(const MultiIndex& k) {
    long s = 0;
    for (int v : k) s += v;
    return s;
}

Integer multiindex_factorial(const MultiIndex& k) {
    Integer r(1);
    for (int v : k) {
        if (v < 0) throw error("factorial of negative entry");
        r *= factorial(static_cast<unsigned long>(v));
    }
    return r;
}

bool multiindex_precedes(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw error("multi-index length mismatch");
    long da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

HalfInt gamma_exponent(const MultiIndex& k) {
    // gamma_k = -1/2 + sum_i (2+i)/2 * k_i
    long twice = -1;
    for (std::size_t i = 0; i < k.size(); ++i)
        twice += static_cast<long>(2 + (i + 1)) * k[i];
    return HalfInt(twice);
}

namespace {

void enumerate_rec(int vars, long budget, const std::vector<long>& weights, MultiIndex& cur,
                   int pos, std::vector<MultiIndex>& out) {
    if (pos == vars) {
        out.push_back(cur);
        return;
    }
    for (long v = 0; v * weights[pos] <= budget; ++v) {
        cur[pos] = static_cast<int>(v);
        enumerate_rec(vars, budget - v * weights[pos], weights, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

std::vector<MultiIndex> enumerate_sorted(int vars, long budget, const std::vector<long>& weights) {
    std::vector<MultiIndex> out;
    MultiIndex cur(vars, 0);
    enumerate_rec(vars, budget, weights, cur, 0, out);
    std::sort(out.begin(), out.end(), multiindex_precedes);
    return out;
}

}  // namespace

std::vector<MultiIndex> simplex_indices(int vars, int max_total) {
    return enumerate_sorted(vars, max_total, std::vector<long>(vars, 1));
}

std::vector<MultiIndex> weighted_ball_indices(int vars, long weighted_cap) {
    std::vector<long> w(vars);
    for (int i = 0; i < vars; ++i) w[i] = 2 + (i + 1);
    return enumerate_sorted(vars, weighted_cap, w);
}

Rational stirling2(int n, int j) {
    if (j < 0 || n < 0 || j > n) throw error("stirling2 index out of range");
    static std::map<std::pair<int, int>, Integer> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, j});
    if (it != cache.end()) return Rational(it->second);
    // S(n,j) = j*S(n-1,j) + S(n-1,j-1)
    std::vector<Integer> row(1, Integer(1));  // S(0,0)
    for (int m = 1; m <= n; ++m) {
        std::vector<Integer> next(m + 1, Integer(0));
        for (int l = 1; l <= m; ++l) {
            next[l] = (l < static_cast<int>(row.size()) ? Integer(l * row[l]) : Integer(0));
            next[l] += row[l - 1];
        }
        next[0] = 0;
        row = std::move(next);
        for (int l = 0; l <= m; ++l) cache[{m, l}] = row[l];
    }
    if (n == 0) cache[{0, 0}] = 1;
    return Rational(cache[{n, j}]);
}

}  // namespace exc
