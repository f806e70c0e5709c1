#ifndef ROWPADE_POLYNOMIAL_HPP
#define ROWPADE_POLYNOMIAL_HPP

#include "rowpade/complex.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rowpade {

/// Dense univariate polynomial, coefficients in ascending degree. The stored
/// sequence never ends in an exact zero, so the zero polynomial is empty and
/// degree() == size() - 1.
template <class S>
class Polynomial {
public:
    using scalar_type = S;

    Polynomial() = default;
    explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<S> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(S value) { return Polynomial(std::vector<S>{std::move(value)}); }
    static Polynomial monomial(S value, std::size_t power) {
        std::vector<S> c(power + 1);
        c[power] = std::move(value);
        return Polynomial(std::move(c));
    }
    /// z^power
    static Polynomial z(std::size_t power = 1) { return monomial(S(1), power); }
    static Polynomial from_roots(const std::vector<S>& roots) {
        Polynomial p = constant(S(1));
        for (const auto& r : roots) p = p * Polynomial({-r, S(1)});
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }
    const std::vector<S>& coefficients() const { return c_; }

    /// Coefficient of z^k; zero past the degree.
    S operator[](std::size_t k) const { return k < c_.size() ? c_[k] : S(0); }
    const S& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    /// Order of the zero at the origin. Zero polynomial reports its stored size (0).
    std::size_t valuation() const {
        std::size_t k = 0;
        while (k < c_.size() && c_[k].is_zero()) ++k;
        return k;
    }

    S operator()(const S& x) const {
        S acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator*=(const S& s) {
        for (auto& x : c_) x *= s;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
    friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<S> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(c));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<S> c_;
};

/// Quotient and remainder of long division by a nonzero divisor.
template <class S>
std::pair<Polynomial<S>, Polynomial<S>> divmod(const Polynomial<S>& a, const Polynomial<S>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial<S>{}, a};
    std::vector<S> rem = a.coefficients();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<S> quo(rem.size() - db);
    const S& lead = b.leading();
    for (std::size_t k = quo.size(); k-- > 0;) {
        S q = rem[k + db] / lead;
        if (!q.is_zero())
            for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coefficients()[j];
        rem[k + db] = S(0);
        quo[k] = std::move(q);
    }
    rem.resize(db);
    return {Polynomial<S>(std::move(quo)), Polynomial<S>(std::move(rem))};
}

/// Coefficients of degree <= max_degree; empty for negative max_degree.
template <class S>
Polynomial<S> truncated(const Polynomial<S>& p, int max_degree) {
    if (max_degree < 0) return {};
    const auto& c = p.coefficients();
    const std::size_t keep = std::min<std::size_t>(c.size(), static_cast<std::size_t>(max_degree) + 1);
    return Polynomial<S>(std::vector<S>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(keep)));
}

/// Multiplies by z^k.
template <class S>
Polynomial<S> shifted_up(const Polynomial<S>& p, std::size_t k) {
    if (p.is_zero()) return p;
    std::vector<S> c(k);
    c.insert(c.end(), p.coefficients().begin(), p.coefficients().end());
    return Polynomial<S>(std::move(c));
}

/// Divides by z^k; the low k coefficients are discarded.
template <class S>
Polynomial<S> shifted_down(const Polynomial<S>& p, std::size_t k) {
    const auto& c = p.coefficients();
    if (k >= c.size()) return {};
    return Polynomial<S>(std::vector<S>(c.begin() + static_cast<std::ptrdiff_t>(k), c.end()));
}

template <class S>
Polynomial<S> derivative(const Polynomial<S>& p) {
    const auto& c = p.coefficients();
    if (c.size() <= 1) return {};
    std::vector<S> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * S(static_cast<int>(k));
    return Polynomial<S>(std::move(d));
}

template <class S>
Polynomial<S> monic(const Polynomial<S>& p) {
    if (p.is_zero()) return p;
    return p * (S(1) / p.leading());
}

inline Polynomial<Float> to_float(const Polynomial<Exact>& p) {
    std::vector<Float> c;
    c.reserve(p.size());
    for (const auto& x : p.coefficients()) c.push_back(to_float(x));
    return Polynomial<Float>(std::move(c));
}
inline const Polynomial<Float>& to_float(const Polynomial<Float>& p) { return p; }

/// Largest coefficient modulus.
template <class S>
Real coefficient_scale(const Polynomial<S>& p) {
    Real m(0);
    for (const auto& x : p.coefficients()) m = std::max<Real>(m, abs(x));
    return m;
}

/// Drops trailing coefficients whose modulus is at most rel * coefficient_scale,
/// and flushes interior ones below the same threshold to exact zero.
inline Polynomial<Float> cleaned(const Polynomial<Float>& p, const Real& rel) {
    const Real cut = rel * coefficient_scale(p);
    std::vector<Float> c = p.coefficients();
    for (auto& x : c)
        if (abs(x) <= cut) x = Float(0);
    return Polynomial<Float>(std::move(c));
}

/// Horner evaluation in float mode of either coefficient type.
template <class S>
Float eval_float(const Polynomial<S>& p, const Float& z) {
    Float acc(0);
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + to_float(*it);
    return acc;
}

}  // namespace rowpade

#endif
