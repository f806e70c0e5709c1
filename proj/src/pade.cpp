#include "rowpade/pade.hpp"

#include "rowpade/gcd.hpp"
#include "rowpade/nullspace.hpp"

#include <algorithm>

namespace rowpade {

std::optional<Rational> rationalize(const Real& x, const Real& tol, const Integer& max_den) {
    Integer h0(0), h1(1), k0(1), k1(0);
    Real y = x;
    for (int iter = 0; iter < 400; ++iter) {
        const Real fl = mp::floor(y);
        Integer a;
        mpfr_get_z(a.backend().data(), fl.backend().data(), MPFR_RNDD);
        const Integer h2 = a * h1 + h0;
        const Integer k2 = a * k1 + k0;
        if (k2 > max_den) return std::nullopt;
        const Rational c(h2, k2);
        if (mp::abs(to_real(c) - x) <= tol) return c;
        const Real frac = y - fl;
        if (frac == 0) return c;
        y = 1 / frac;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    return std::nullopt;
}

namespace {

bool inside_unit_disk(const Float& z, const Context& ctx) { return abs(z) <= Real(1) + Real(ctx.cluster_radius()); }

std::optional<Polynomial<Exact>> rational_polynomial(const Polynomial<Float>& g, const Context& ctx) {
    const Real tol = mp::sqrt(ctx.tolerance()) * std::max<Real>(Real(1), coefficient_scale(g));
    const Integer max_den = Integer(1) << 96;
    std::vector<Exact> c;
    for (const auto& x : g.coefficients()) {
        auto re = rationalize(x.real(), tol, max_den);
        auto im = rationalize(x.imag(), tol, max_den);
        if (!re || !im) return std::nullopt;
        c.emplace_back(*re, *im);
    }
    return Polynomial<Exact>(std::move(c));
}

// Monic factor of m whose roots are those of `outside`, when it has exact coefficients.
std::optional<Polynomial<Exact>> exact_outside_factor(const Polynomial<Exact>& m, const std::vector<Float>& inside,
                                                      const std::vector<Float>& outside, const Context& ctx) {
    if (auto g = rational_polynomial(Polynomial<Float>::from_roots(outside), ctx)) {
        auto [quo, rem] = divmod(m, *g);
        if (rem.is_zero()) return g;
    }
    if (auto g = rational_polynomial(Polynomial<Float>::from_roots(inside), ctx)) {
        auto [quo, rem] = divmod(m, *g);
        if (rem.is_zero()) return quo;
    }
    return std::nullopt;
}

// |p(z)| and sum_k |a_k| |z|^k.
std::pair<Real, Real> residual_and_scale(const Polynomial<Float>& p, const Float& z) {
    const Real az = abs(z);
    Real scale(0);
    for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it) scale = scale * az + abs(*it);
    return {abs(p(z)), scale};
}

template <class S>
Polynomial<S> convert(const Polynomial<Exact>& p) {
    if constexpr (is_exact_v<S>)
        return p;
    else
        return to_float(p);
}

unsigned common_valuation(const Polynomial<Exact>& Q, const std::vector<Polynomial<Exact>>& P) {
    std::size_t v = Q.valuation();
    for (const auto& p : P)
        if (!p.is_zero()) v = std::min(v, p.valuation());
    return static_cast<unsigned>(v);
}

}  // namespace

template <>
CanonicalForm<Exact> canonical_form(const Polynomial<Exact>& q, const Context& ctx) {
    if (q.is_zero()) throw std::domain_error("canonical form of the zero polynomial");
    CanonicalForm<Exact> out;
    const Exact inv_lead = Exact(1) / q.leading();
    const Polynomial<Exact> m = q * inv_lead;
    if (q.degree() == 0) {
        out.poly = m;
        out.factor = inv_lead;
        return out;
    }
    out.zeros = roots(q, ctx);
    std::vector<Float> inside, outside;
    for (const auto& z : out.zeros.expanded()) (inside_unit_disk(z, ctx) ? inside : outside).push_back(z);
    if (outside.empty()) {
        out.poly = m;
        out.factor = inv_lead;
        return out;
    }
    if (auto g = exact_outside_factor(m, inside, outside, ctx)) {
        const Exact c = Exact(1) / (*g)[0];
        out.poly = m * c;
        out.factor = inv_lead * c;
        return out;
    }
    out.poly = m;
    out.factor = inv_lead;
    out.scale = Float(1) / Polynomial<Float>::from_roots(outside)[0];
    out.exact = false;
    return out;
}

template <>
CanonicalForm<Float> canonical_form(const Polynomial<Float>& q, const Context& ctx) {
    if (q.is_zero()) throw std::domain_error("canonical form of the zero polynomial");
    CanonicalForm<Float> out;
    const Float inv_lead = Float(1) / q.leading();
    const Polynomial<Float> m = q * inv_lead;
    out.poly = m;
    out.factor = inv_lead;
    if (q.degree() == 0) return out;
    out.zeros = roots(q, ctx);
    std::vector<Float> outside;
    for (const auto& z : out.zeros.expanded())
        if (!inside_unit_disk(z, ctx)) outside.push_back(z);
    if (outside.empty()) return out;
    const Float c = Float(1) / Polynomial<Float>::from_roots(outside)[0];
    out.poly = m * c;
    out.factor = inv_lead * c;
    return out;
}

template <>
Reduction<Exact> reduce_and_normalize(const Polynomial<Exact>& Qraw, const std::vector<Polynomial<Exact>>& Praw,
                                      const Context& ctx, bool) {
    if (Qraw.is_zero()) throw std::domain_error("reduce_and_normalize: zero denominator");
    Reduction<Exact> out;
    out.lambda = common_valuation(Qraw, Praw);
    std::vector<Polynomial<Exact>> all{Qraw};
    all.insert(all.end(), Praw.begin(), Praw.end());
    auto red = gcd_reduce(all);
    auto canon = canonical_form(red.quotients[0], ctx);
    out.Q = std::move(canon.poly);
    for (std::size_t j = 1; j < red.quotients.size(); ++j) out.P.push_back(red.quotients[j] * canon.factor);
    out.scale = canon.scale;
    out.canonical_exact = canon.exact;
    out.zeros = std::move(canon.zeros);
    return out;
}

template <>
Reduction<Float> reduce_and_normalize(const Polynomial<Float>& Qraw, const std::vector<Polynomial<Float>>& Praw,
                                      const Context& ctx, bool strict) {
    const Real tol = ctx.tolerance();
    Polynomial<Float> Q = cleaned(Qraw, tol);
    if (Q.is_zero()) throw std::domain_error("reduce_and_normalize: zero denominator");
    std::vector<Polynomial<Float>> P;
    for (const auto& p : Praw) P.push_back(cleaned(p, tol));

    Reduction<Float> out;
    std::size_t lambda = Q.valuation();
    for (const auto& p : P)
        if (!p.is_zero()) lambda = std::min(lambda, p.valuation());
    out.lambda = static_cast<unsigned>(lambda);
    Q = shifted_down(Q, lambda);
    for (auto& p : P) p = shifted_down(p, lambda);

    if (Q.degree() >= 1) {
        const Real accept = mp::sqrt(tol);
        const Real doubt = mp::sqrt(accept);
        for (const auto& root : roots(Q, ctx).roots) {
            for (unsigned t = 0; t < root.multiplicity; ++t) {
                bool vanish = true;
                bool clear = false;
                for (const auto& p : P) {
                    if (p.is_zero()) continue;
                    const auto [res, scale] = residual_and_scale(p, root.value);
                    if (res <= accept * scale) continue;
                    if (res > doubt * scale) clear = true;
                    vanish = false;
                }
                if (!vanish && !clear && strict)
                    throw UncertainCancellation("uncertain cancellation: numerator nearly vanishes at a denominator root");
                if (!vanish) break;
                const Polynomial<Float> linear{-root.value, Float(1)};
                Q = divmod(Q, linear).first;
                for (auto& p : P)
                    if (!p.is_zero()) p = divmod(p, linear).first;
            }
        }
    }
    auto canon = canonical_form(Q, ctx);
    out.Q = std::move(canon.poly);
    for (auto& p : P) out.P.push_back(p * canon.factor);
    out.zeros = std::move(canon.zeros);
    return out;
}

template <class S>
Matrix<S> condition_rows(const std::vector<S>& phi, int n, int count, int unknowns) {
    Matrix<S> M(count, unknowns);
    for (int r = 0; r < count; ++r) {
        const int k = n - count + 1 + r;
        for (int j = 0; j < unknowns; ++j) M(r, j) = k >= j ? phi[static_cast<std::size_t>(k - j)] : S(0);
    }
    return M;
}

template <class S>
std::vector<S> series_coefficients(const PowerSeries& f, std::size_t count, OpaqueConstant* offset) {
    if constexpr (is_exact_v<S>) {
        if (offset) *offset = f.opaque();
        return f.coeffs(count);
    } else {
        if (offset) *offset = OpaqueConstant{};
        std::vector<Float> out;
        out.reserve(count);
        for (std::size_t k = 0; k < count; ++k) out.push_back(f.coeff_float(k));
        return out;
    }
}

template <class S>
Float PadeApproximant<S>::denominator_at(const Float& z) const {
    return scale * eval_float(Q, z);
}

template <class S>
Float PadeApproximant<S>::value_at(const Float& z) const {
    const Float q = eval_float(Q, z);
    Float p = eval_float(P, z);
    if (!offset.is_zero()) p += offset.value() * q;
    return p / q;
}

template <class S>
Polynomial<Float> PadeApproximant<S>::canonical_denominator() const {
    return to_float(Q) * scale;
}

template <class S>
PadeApproximant<S> compute_incomplete(const PowerSeries& f, int n, int m, int mstar, const IncompleteSelector& selector,
                                      const Context& ctx) {
    if (!(n >= m && m >= mstar && mstar >= 0)) throw std::invalid_argument("need n >= m >= mstar >= 0");
    PadeApproximant<S> a;
    a.n = n;
    a.m = m;
    a.mstar = mstar;
    const auto phi = series_coefficients<S>(f, static_cast<std::size_t>(n) + 1, &a.offset);
    if (!a.offset.is_zero() && mstar > 0 && n - mstar + 1 <= m)
        throw OpaqueValueNeeded("exact mode: the conditions involve the irrational constant term; use float mode or n >= m + mstar");

    if (selector.kind == IncompleteSelector::Kind::canonical) {
        const auto v = nullspace_vector(condition_rows(phi, n, mstar, m + 1)).vector;
        a.Qraw = Polynomial<S>(std::vector<S>(v.data(), v.data() + v.size()));
    } else {
        if (selector.factor.degree() != m - mstar)
            throw std::invalid_argument("padetype factor must have degree m - mstar");
        const Polynomial<S> t = convert<S>(selector.factor);
        const Polynomial<S> tf = truncated(t * Polynomial<S>(phi), n);
        std::vector<S> g(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) g[static_cast<std::size_t>(k)] = tf[static_cast<std::size_t>(k)];
        const auto v = nullspace_vector(condition_rows(g, n, mstar, mstar + 1)).vector;
        a.Qraw = t * Polynomial<S>(std::vector<S>(v.data(), v.data() + v.size()));
    }
    a.Praw = truncated(a.Qraw * Polynomial<S>(phi), n - mstar);

    auto red = reduce_and_normalize(a.Qraw, a.Praw, ctx);
    a.Q = std::move(red.Q);
    a.P = std::move(red.P.front());
    a.lambda = red.lambda;
    a.scale = red.scale;
    a.canonical_exact = red.canonical_exact;
    a.zeros = std::move(red.zeros);
    return a;
}

template <class S>
PadeApproximant<S> compute_pade(const PowerSeries& f, int n, int m, const Context& ctx) {
    return compute_incomplete<S>(f, n, m, m, IncompleteSelector::canonical(), ctx);
}

template <class S>
std::size_t linearization_order(const Polynomial<S>& Q, const Polynomial<S>& P, const PowerSeries& f, std::size_t up_to,
                                const Context& ctx) {
    const auto phi = series_coefficients<S>(f, up_to + 1);
    const Real tol = mp::sqrt(ctx.tolerance());
    for (std::size_t k = 0; k <= up_to; ++k) {
        S c = -P[k];
        Real scale = abs(P[k]);
        for (std::size_t i = 0; i <= k && i < Q.size(); ++i) {
            const S term = Q[i] * phi[k - i];
            c += term;
            if constexpr (!is_exact_v<S>) scale += abs(term);
        }
        if constexpr (is_exact_v<S>) {
            if (!c.is_zero()) return k;
        } else {
            if (abs(c) > tol * scale) return k;
        }
    }
    return up_to + 1;
}

template struct PadeApproximant<Exact>;
template struct PadeApproximant<Float>;

template Matrix<Exact> condition_rows(const std::vector<Exact>&, int, int, int);
template Matrix<Float> condition_rows(const std::vector<Float>&, int, int, int);
template std::vector<Exact> series_coefficients<Exact>(const PowerSeries&, std::size_t, OpaqueConstant*);
template std::vector<Float> series_coefficients<Float>(const PowerSeries&, std::size_t, OpaqueConstant*);
template PadeApproximant<Exact> compute_incomplete<Exact>(const PowerSeries&, int, int, int, const IncompleteSelector&, const Context&);
template PadeApproximant<Float> compute_incomplete<Float>(const PowerSeries&, int, int, int, const IncompleteSelector&, const Context&);
template PadeApproximant<Exact> compute_pade<Exact>(const PowerSeries&, int, int, const Context&);
template PadeApproximant<Float> compute_pade<Float>(const PowerSeries&, int, int, const Context&);
template std::size_t linearization_order(const Polynomial<Exact>&, const Polynomial<Exact>&, const PowerSeries&, std::size_t, const Context&);
template std::size_t linearization_order(const Polynomial<Float>&, const Polynomial<Float>&, const PowerSeries&, std::size_t, const Context&);

}  // namespace rowpade
