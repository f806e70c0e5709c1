#ifndef ROWPADE_PADE_HPP
#define ROWPADE_PADE_HPP

#include "rowpade/context.hpp"
#include "rowpade/eigen_support.hpp"
#include "rowpade/polynomial.hpp"
#include "rowpade/roots.hpp"
#include "rowpade/series.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace rowpade {

/// Raised in exact mode when a computation would need the exact value of an
/// irrational constant term (a log series' phi_0).
class OpaqueValueNeeded : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result of normalizing a polynomial to the product form
///   prod_{|z_k| <= 1} (z - z_k) * prod_{|z_k| > 1} (1 - z/z_k).
/// In exact mode this is only possible when the factor built from the roots
/// outside the unit disk has coefficients in Q(i); otherwise poly is left
/// monic and scale carries the remaining (float) constant.
template <class S>
struct CanonicalForm {
    Polynomial<S> poly;
    /// poly = factor * input.
    S factor;
    /// The canonical representative is scale * poly.
    Float scale{1};
    bool exact = true;
    RootSet zeros;
};

template <class S>
CanonicalForm<S> canonical_form(const Polynomial<S>& q, const Context& ctx);
template <>
CanonicalForm<Exact> canonical_form(const Polynomial<Exact>& q, const Context& ctx);
template <>
CanonicalForm<Float> canonical_form(const Polynomial<Float>& q, const Context& ctx);

/// Common-factor removal and normalization of a denominator together with one
/// or more numerators (the same constant rescales all of them).
template <class S>
struct Reduction {
    Polynomial<S> Q;
    std::vector<Polynomial<S>> P;
    /// Order of the common zero at the origin of the inputs.
    unsigned lambda = 0;
    Float scale{1};
    bool canonical_exact = true;
    RootSet zeros;
};

/// Exact mode divides by the gcd of all inputs. Float mode cancels a root of Q
/// when every numerator vanishes there to within sqrt(tolerance) relative to its
/// coefficient scale. When no numerator is clearly nonzero there (above
/// tolerance^(1/4)) but some is not negligible either, strict mode throws
/// UncertainCancellation and lenient mode keeps the root.
template <class S>
Reduction<S> reduce_and_normalize(const Polynomial<S>& Qraw, const std::vector<Polynomial<S>>& Praw, const Context& ctx,
                                  bool strict = true);
template <>
Reduction<Exact> reduce_and_normalize(const Polynomial<Exact>& Qraw, const std::vector<Polynomial<Exact>>& Praw,
                                      const Context& ctx, bool strict);
template <>
Reduction<Float> reduce_and_normalize(const Polynomial<Float>& Qraw, const std::vector<Polynomial<Float>>& Praw,
                                      const Context& ctx, bool strict);

template <class S>
Reduction<S> reduce_and_normalize(const Polynomial<S>& Qraw, const Polynomial<S>& Praw, const Context& ctx,
                                  bool strict = true) {
    return reduce_and_normalize(Qraw, std::vector<Polynomial<S>>{Praw}, ctx, strict);
}

/// How the free parameters of an incomplete approximant are fixed.
struct IncompleteSelector {
    enum class Kind { canonical, padetype };
    Kind kind = Kind::canonical;
    /// padetype only: Q = factor * Q~ with deg factor = m - mstar.
    Polynomial<Exact> factor;

    static IncompleteSelector canonical() { return {}; }
    static IncompleteSelector padetype(Polynomial<Exact> t) { return {Kind::padetype, std::move(t)}; }
};

/// One (n, m, mstar) approximant. Exact mode keeps the opaque constant term of
/// f apart: the true numerators are Praw + offset * Qraw and P + offset * Q.
template <class S>
struct PadeApproximant {
    int n = 0;
    int m = 0;
    int mstar = 0;
    Polynomial<S> Qraw;
    Polynomial<S> Praw;
    Polynomial<S> Q;
    Polynomial<S> P;
    OpaqueConstant offset;
    unsigned lambda = 0;
    /// Canonical denominator is scale * Q (see CanonicalForm).
    Float scale{1};
    bool canonical_exact = true;
    RootSet zeros;

    /// Canonical denominator at z.
    Float denominator_at(const Float& z) const;
    /// P(z)/Q(z) including the opaque constant.
    Float value_at(const Float& z) const;
    /// Canonical denominator as a float polynomial.
    Polynomial<Float> canonical_denominator() const;
};

/// Padé approximant of type (n, m).
template <class S>
PadeApproximant<S> compute_pade(const PowerSeries& f, int n, int m, const Context& ctx);

/// Incomplete approximant of type (n, m, mstar): deg Q <= m, deg P <= n - mstar,
/// and coefficients n-mstar+1 .. n of Q f vanish.
template <class S>
PadeApproximant<S> compute_incomplete(const PowerSeries& f, int n, int m, int mstar, const IncompleteSelector& selector,
                                      const Context& ctx);

/// Index of the first nonzero coefficient of Q f - P, or up_to + 1 when
/// coefficients 0..up_to all vanish. In exact mode P is the rational part: the
/// opaque constant of f is taken as paired with Q, as in PadeApproximant. Float
/// mode treats coefficients below sqrt(tolerance) times their term scale as zero.
template <class S>
std::size_t linearization_order(const Polynomial<S>& Q, const Polynomial<S>& P, const PowerSeries& f, std::size_t up_to,
                                const Context& ctx);

/// First count coefficients of f in mode S. Exact mode returns rational
/// parts and reports the opaque constant through offset.
template <class S>
std::vector<S> series_coefficients(const PowerSeries& f, std::size_t count, OpaqueConstant* offset = nullptr);

/// Rows stating that coefficients n-count+1 .. n of Q f vanish, for Q with the
/// given number of unknown coefficients; phi holds f's coefficients 0..n.
template <class S>
Matrix<S> condition_rows(const std::vector<S>& phi, int n, int count, int unknowns);

/// Best rational with denominator at most max_den within tol of x, by continued
/// fractions.
std::optional<Rational> rationalize(const Real& x, const Real& tol, const Integer& max_den);

extern template struct PadeApproximant<Exact>;
extern template struct PadeApproximant<Float>;

}  // namespace rowpade

#endif
