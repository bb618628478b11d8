#pragma once

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace liex {

using Exponents = std::vector<int>;

// graded order: lower total degree first; within a degree, x0-heavy monomials first
struct GradedLex {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db) return da < db;
        return a > b;
    }
};

// Sparse multivariate polynomial in a fixed number of variables.
template <class T>
class Polynomial {
public:
    using Terms = std::map<Exponents, T, GradedLex>;

    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const T& c) {
        Polynomial p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }
    static Polynomial variable(int nvars, int i, const T& c = T(1)) {
        Polynomial p(nvars);
        Exponents e(nvars, 0);
        e.at(i) = 1;
        p.add_term(e, c);
        return p;
    }
    static Polynomial monomial(const Exponents& e, const T& c = T(1)) {
        Polynomial p(static_cast<int>(e.size()));
        p.add_term(e, c);
        return p;
    }

    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
        return d;
    }

    T coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? T(0) : it->second;
    }

    void add_term(const Exponents& e, const T& c) {
        if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("monomial has the wrong number of variables");
        if (c == T(0)) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == T(0)) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        adopt(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        adopt(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const T& s) {
        if (s == T(0)) terms_.clear();
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= T(-1); }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out(std::max(a.nvars_, b.nvars_));
        if (!a.is_zero() && !b.is_zero() && a.nvars_ != b.nvars_)
            throw std::invalid_argument("polynomials live in different rings");
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea);
                for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    Polynomial derivative(int i) const {
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e.at(i) == 0) continue;
            Exponents d(e);
            --d[i];
            out.add_term(d, c * T(e[i]));
        }
        return out;
    }

    template <class V>
    V evaluate(const std::vector<V>& x) const {
        if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("wrong number of values");
        V acc(0);
        for (const auto& [e, c] : terms_) {
            V m = V(c);
            for (int k = 0; k < nvars_; ++k)
                for (int p = 0; p < e[k]; ++p) m *= x[k];
            acc += m;
        }
        return acc;
    }

    // depends on variable i at all
    bool uses(int i) const {
        for (const auto& [e, c] : terms_)
            if (e.at(i) > 0) return true;
        return false;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    void adopt(const Polynomial& o) {
        if (is_zero() && nvars_ == 0) nvars_ = o.nvars_;
        if (!o.is_zero() && o.nvars_ != nvars_) throw std::invalid_argument("polynomials live in different rings");
    }

    int nvars_ = 0;
    Terms terms_;
};

}  // namespace liex
