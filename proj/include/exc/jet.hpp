#pragma once

#include <map>
#include <memory>
#include <vector>

#include "exc/exact.hpp"

namespace exc {

// Index layout for truncated Taylor expansions in `vars` variables up to
// total degree `order`, enumerated in the multiindex_precedes order. Shapes
// are interned per (vars, order) so jets can share tables.
class JetShape {
  public:
    static std::shared_ptr<const JetShape> get(int vars, int order);

    int vars() const { return vars_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(exponents_.size()); }
    const MultiIndex& exponent(int i) const { return exponents_[i]; }
    // -1 if the exponent is outside the truncation
    int index_of(const MultiIndex& e) const;
    // product target: index of exponent(i) + exponent(j), or -1 if truncated
    int product_index(int i, int j) const { return prod_[i][j]; }
    long degree(int i) const { return degrees_[i]; }

  private:
    JetShape(int vars, int order);
    int vars_, order_;
    std::vector<MultiIndex> exponents_;
    std::vector<long> degrees_;
    std::map<MultiIndex, int> rank_;
    std::vector<std::vector<int>> prod_;
};

// Truncated Taylor expansion with exact rational coefficients, in the
// variables delta_i = 1 - u_i around the undeformed point u_+ = 1.
class Jet {
  public:
    Jet() = default;
    explicit Jet(std::shared_ptr<const JetShape> shape)
        : shape_(std::move(shape)), c_(shape_->size(), Rational(0)) {}
    static Jet constant(std::shared_ptr<const JetShape> shape, const Rational& v);

    const JetShape& shape() const { return *shape_; }
    std::shared_ptr<const JetShape> shape_ptr() const { return shape_; }
    int size() const { return static_cast<int>(c_.size()); }
    const Rational& operator[](int i) const { return c_[i]; }
    Rational& operator[](int i) { return c_[i]; }
    const Rational& coeff(const MultiIndex& e) const;
    bool is_zero() const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Rational& s);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Rational& s) { return a *= s; }
    friend bool operator==(const Jet& a, const Jet& b) { return a.c_ == b.c_; }

    // this += a*b, truncated
    void add_product(const Jet& a, const Jet& b);
    friend Jet mul(const Jet& a, const Jet& b);
    Jet pow(unsigned long e) const;

    // Substitutes delta_i -> subst[i] (jets with zero constant term).
    Jet compose(const std::vector<Jet>& subst) const;

  private:
    std::shared_ptr<const JetShape> shape_;
    std::vector<Rational> c_;
};

}  // namespace exc
