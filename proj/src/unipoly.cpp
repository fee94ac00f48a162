#include "exc/unipoly.hpp"

#include <algorithm>

namespace exc {

void UniPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& UniPoly::leading() const {
    if (c_.empty()) throw error("leading coefficient of zero polynomial");
    return c_.back();
}

Rational UniPoly::eval(const Rational& x) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

int UniPoly::sign_at(const Rational& x) const {
    Rational v = eval(x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return UniPoly(std::move(d));
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(r));
}

void UniPoly::divmod(const UniPoly& a, const UniPoly& b, UniPoly* quot, UniPoly* rem) {
    if (b.is_zero()) throw error("polynomial division by zero");
    std::vector<Rational> r = a.c_;
    long db = b.degree();
    std::vector<Rational> q(std::max<long>(0, a.degree() - db + 1), Rational(0));
    while (static_cast<long>(r.size()) - 1 >= db) {
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (static_cast<long>(r.size()) - 1 < db) break;
        long shift = static_cast<long>(r.size()) - 1 - db;
        Rational f = r.back() / b.c_.back();
        q[shift] = f;
        for (long i = 0; i <= db; ++i) r[shift + i] -= f * b.c_[i];
    }
    if (quot) *quot = UniPoly(std::move(q));
    if (rem) *rem = UniPoly(std::move(r));
}

UniPoly UniPoly::div_exact(const UniPoly& a, const UniPoly& b) {
    UniPoly q, r;
    divmod(a, b, &q, &r);
    if (!r.is_zero()) throw error("inexact polynomial division");
    return q;
}

int UniPoly::strip_root_at_zero() {
    int m = 0;
    while (!c_.empty() && c_[0] == 0) {
        c_.erase(c_.begin());
        ++m;
    }
    return m;
}

Rational UniPoly::root_bound() const {
    if (degree() < 1) return Rational(1);
    Rational m(0);
    for (std::size_t i = 0; i + 1 < c_.size(); ++i) {
        Rational a = abs(c_[i] / c_.back());
        if (a > m) m = a;
    }
    return m + 1;
}

UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r;
        UniPoly::divmod(a, b, nullptr, &r);
        if (!r.is_zero()) r *= Rational(1) / r.leading();  // keep coefficients small
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a *= Rational(1) / a.leading();
    return a;
}

UniPoly squarefree_part(const UniPoly& p) {
    if (p.degree() < 1) return p;
    UniPoly g = gcd(p, p.derivative());
    if (g.degree() < 1) return p;
    return UniPoly::div_exact(p, g);
}

namespace {

// Divisors via trial division; nullopt when a large composite cofactor shows up.
std::optional<std::vector<Integer>> divisors(Integer n) {
    if (n < 0) n = -n;
    if (n == 0) return std::vector<Integer>{};
    std::vector<std::pair<Integer, int>> fac;
    for (unsigned long p = 2; p <= 1000000ul && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            fac.emplace_back(Integer(p), e);
        }
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0 && n > Integer("1000000000000"))
            return std::nullopt;  // large composite; give up on exact candidates
        fac.emplace_back(n, 1);
    }
    std::vector<Integer> divs{Integer(1)};
    for (const auto& [p, e] : fac) {
        std::size_t base = divs.size();
        Integer pk(1);
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

}  // namespace

std::optional<std::vector<Rational>> rational_roots(const UniPoly& p) {
    std::vector<Rational> roots;
    UniPoly q = squarefree_part(p);
    if (q.eval(0) == 0) {
        roots.push_back(Rational(0));
        q.strip_root_at_zero();
    }
    if (q.degree() < 1) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    // integerize: multiply by lcm of denominators
    Integer lcm(1);
    for (const Rational& c : q.coeffs()) {
        Integer d = c.get_den();
        Integer g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
        lcm = lcm / g * d;
    }
    std::vector<Integer> ic;
    for (const Rational& c : q.coeffs()) {
        Rational s = c * Rational(lcm);
        ic.push_back(s.get_num());
    }
    auto dn = divisors(ic.front());
    auto dd = divisors(ic.back());
    if (!dn || !dd) return std::nullopt;
    for (const Integer& a : *dn)
        for (const Integer& b : *dd) {
            for (int s : {1, -1}) {
                Rational cand(s > 0 ? a : Integer(-a), b);
                cand.canonicalize();
                if (q.eval(cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
        UniPoly r;
        UniPoly::divmod(chain[chain.size() - 2], chain.back(), nullptr, &r);
        if (r.is_zero()) break;
        r *= Rational(-1);
        chain.push_back(std::move(r));
        if (chain.back().degree() == 0) break;
    }
    return chain;
}

int sign_variations(const std::vector<UniPoly>& chain, const Rational& x) {
    int var = 0, prev = 0;
    for (const UniPoly& q : chain) {
        int s = q.is_zero() ? 0 : q.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

}  // namespace

std::vector<std::pair<Rational, Rational>> isolate_roots(const UniPoly& p, const Rational& lo,
                                                         const Rational& hi) {
    UniPoly q = squarefree_part(p);
    if (q.degree() < 1) return {};
    auto chain = sturm_chain(q);
    auto count = [&](const Rational& a, const Rational& b) {
        return sign_variations(chain, a) - sign_variations(chain, b);
    };
    std::vector<std::pair<Rational, Rational>> out;
    std::vector<std::pair<Rational, Rational>> work{{lo, hi}};
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        int n = count(a, b);
        if (n == 0) continue;
        if (n == 1) {
            out.emplace_back(a, b);
            continue;
        }
        // Split at a non-root so every emitted bracket has nonzero endpoint
        // signs (except possibly the original hi).
        Rational m = (a + b) / 2;
        for (long j = 2; q.sign_at(m) == 0; ++j) m = a + (b - a) * Rational(j, 2 * j + 1);
        work.emplace_back(m, b);
        work.emplace_back(a, m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<Rational, Rational> refine_root(const UniPoly& p, Rational lo, Rational hi,
                                          const Rational& width) {
    int slo = p.sign_at(lo);
    int shi = p.sign_at(hi);
    if (slo == 0) return {lo, lo};
    if (shi == 0) return {hi, hi};
    if (slo == shi) throw error("refine_root: endpoints do not bracket a sign change");
    while (hi - lo > width) {
        Rational m = (lo + hi) / 2;
        int sm = p.sign_at(m);
        if (sm == 0) return {m, m};
        if (sm == slo) lo = m;
        else hi = m;
    }
    return {lo, hi};
}

}  // namespace exc
