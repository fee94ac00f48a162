#include "exc/jet.hpp"

#include <mutex>

namespace exc {

JetShape::JetShape(int vars, int order) : vars_(vars), order_(order) {
    if (vars < 0 || order < 0) throw error("bad jet shape");
    exponents_ = simplex_indices(vars, order);
    degrees_.resize(exponents_.size());
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        degrees_[i] = total_degree(exponents_[i]);
        rank_[exponents_[i]] = static_cast<int>(i);
    }
    int n = size();
    prod_.assign(n, std::vector<int>(n, -1));
    MultiIndex sum(vars);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (degrees_[i] + degrees_[j] > order) continue;
            for (int v = 0; v < vars; ++v) sum[v] = exponents_[i][v] + exponents_[j][v];
            prod_[i][j] = rank_.at(sum);
        }
    }
}

std::shared_ptr<const JetShape> JetShape::get(int vars, int order) {
    static std::map<std::pair<int, int>, std::shared_ptr<const JetShape>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(vars, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto shape = std::shared_ptr<const JetShape>(new JetShape(vars, order));
    cache[key] = shape;
    return shape;
}

int JetShape::index_of(const MultiIndex& e) const {
    auto it = rank_.find(e);
    return it == rank_.end() ? -1 : it->second;
}

Jet Jet::constant(std::shared_ptr<const JetShape> shape, const Rational& v) {
    Jet j(std::move(shape));
    j.c_[0] = v;  // index 0 is the zero exponent
    return j;
}

const Rational& Jet::coeff(const MultiIndex& e) const {
    int i = shape_->index_of(e);
    if (i < 0) throw error("jet coefficient outside truncation order");
    return c_[i];
}

bool Jet::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

Jet& Jet::operator+=(const Jet& o) {
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet& Jet::operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

void Jet::add_product(const Jet& a, const Jet& b) {
    const JetShape& sh = *shape_;
    int n = size();
    for (int i = 0; i < n; ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            int t = sh.product_index(i, j);
            if (t < 0 || b.c_[j] == 0) continue;
            c_[t] += a.c_[i] * b.c_[j];
        }
    }
}

Jet mul(const Jet& a, const Jet& b) {
    Jet r(a.shape_ptr());
    r.add_product(a, b);
    return r;
}

Jet Jet::pow(unsigned long e) const {
    Jet r = Jet::constant(shape_, 1);
    Jet b = *this;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Jet Jet::compose(const std::vector<Jet>& subst) const {
    const JetShape& sh = *shape_;
    if (static_cast<int>(subst.size()) != sh.vars()) throw error("compose arity mismatch");
    for (const Jet& s : subst)
        if (s[0] != 0) throw error("compose requires zero constant term");
    // powers cache per variable
    std::vector<std::vector<Jet>> pw(sh.vars());
    for (int v = 0; v < sh.vars(); ++v) {
        pw[v].push_back(Jet::constant(shape_, 1));
        for (int d = 1; d <= sh.order(); ++d) pw[v].push_back(mul(pw[v].back(), subst[v]));
    }
    Jet out(shape_);
    for (int i = 0; i < sh.size(); ++i) {
        if (c_[i] == 0) continue;
        const MultiIndex& e = sh.exponent(i);
        Jet term = Jet::constant(shape_, c_[i]);
        for (int v = 0; v < sh.vars(); ++v)
            if (e[v] > 0) term = mul(term, pw[v][e[v]]);
        out += term;
    }
    return out;
}

}  // namespace exc
