#pragma once

#include <map>
#include <vector>

#include "exc/exact.hpp"

namespace exc {

// Sparse multivariate polynomial; exponent vectors of fixed arity, no zero
// coefficients stored.
template <class S = Rational>
class SparsePoly {
  public:
    using Terms = std::map<std::vector<int>, S>;

    SparsePoly() : vars_(0) {}
    explicit SparsePoly(int vars) : vars_(vars) {}
    static SparsePoly constant(int vars, const S& c) {
        SparsePoly p(vars);
        p.add_term(std::vector<int>(vars, 0), c);
        return p;
    }
    static SparsePoly monomial(int vars, const std::vector<int>& e, const S& c) {
        SparsePoly p(vars);
        p.add_term(e, c);
        return p;
    }

    int vars() const { return vars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const std::vector<int>& e, const S& c) {
        if (static_cast<int>(e.size()) != vars_) throw error("polynomial exponent arity mismatch");
        for (int x : e)
            if (x < 0) throw error("negative exponent in polynomial");
        if (c == S(0)) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == S(0)) terms_.erase(it);
        }
    }

    S coeff(const std::vector<int>& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? S(0) : it->second;
    }

    long degree() const {
        long d = 0;
        for (const auto& [e, c] : terms_) {
            long t = 0;
            for (int x : e) t += x;
            if (t > d) d = t;
        }
        return d;
    }

    long degree_in(int var) const {
        long d = 0;
        for (const auto& [e, c] : terms_)
            if (e[var] > d) d = e[var];
        return d;
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, S(0) - c);
        return *this;
    }
    SparsePoly& operator*=(const S& s) {
        if (s == S(0)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator*(SparsePoly a, const S& s) { return a *= s; }
    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r(a.vars_);
        std::vector<int> e(a.vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int v = 0; v < a.vars_; ++v) e[v] = ea[v] + eb[v];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    SparsePoly derivative(int var) const {
        SparsePoly r(vars_);
        std::vector<int> e(vars_);
        for (const auto& [ex, c] : terms_) {
            if (ex[var] == 0) continue;
            e = ex;
            e[var] -= 1;
            r.add_term(e, c * S(ex[var]));
        }
        return r;
    }

    S eval(const std::vector<S>& x) const {
        if (static_cast<int>(x.size()) != vars_) throw error("polynomial eval arity mismatch");
        S total(0);
        for (const auto& [e, c] : terms_) {
            S t = c;
            for (int v = 0; v < vars_; ++v)
                for (int i = 0; i < e[v]; ++i) t *= x[v];
            total += t;
        }
        return total;
    }

    SparsePoly truncate_total_degree(long cap) const {
        SparsePoly r(vars_);
        for (const auto& [e, c] : terms_) {
            long t = 0;
            for (int x : e) t += x;
            if (t <= cap) r.add_term(e, c);
        }
        return r;
    }

  private:
    int vars_;
    Terms terms_;
};

}  // namespace exc
