#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "exc/exact.hpp"

namespace exc {

// Dense univariate polynomial over Rational, normalized (no leading zeros).
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }
    static UniPoly constant(const Rational& v) { return UniPoly({v}); }

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    const Rational& leading() const;

    Rational eval(const Rational& x) const;
    int sign_at(const Rational& x) const;
    UniPoly derivative() const;

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const Rational& s);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    // Division with remainder; divisor must be nonzero.
    static void divmod(const UniPoly& a, const UniPoly& b, UniPoly* quot, UniPoly* rem);
    // Exact division; throws if the remainder is nonzero.
    static UniPoly div_exact(const UniPoly& a, const UniPoly& b);

    // Strips a factor y^m; returns m.
    int strip_root_at_zero();

    // Upper bound on the absolute value of all real roots (Cauchy bound).
    Rational root_bound() const;

  private:
    void normalize();
    std::vector<Rational> c_;
};

UniPoly gcd(UniPoly a, UniPoly b);       // monic gcd
UniPoly squarefree_part(const UniPoly& p);

// All rational roots with multiplicity stripped (each root listed once),
// ascending. Returns nullopt when the divisor enumeration would require
// factoring a large composite (caller falls back to interval isolation).
std::optional<std::vector<Rational>> rational_roots(const UniPoly& p);

// Isolating intervals (lo, hi] for the distinct real roots of p in (lo, hi],
// via Sturm's theorem; p need not be squarefree. Ascending order.
std::vector<std::pair<Rational, Rational>> isolate_roots(const UniPoly& p, const Rational& lo,
                                                         const Rational& hi);

// Shrinks an isolating interval of a squarefree polynomial until
// hi - lo <= width. If an exact root is hit, returns [r, r].
std::pair<Rational, Rational> refine_root(const UniPoly& p, Rational lo, Rational hi,
                                          const Rational& width);

}  // namespace exc
