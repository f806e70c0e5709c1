#ifndef ROWPADE_HERMITE_HPP
#define ROWPADE_HERMITE_HPP

#include "rowpade/pade.hpp"

#include <string>
#include <vector>

namespace rowpade {

/// (m_1, ..., m_d), nonnegative and not all zero.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> parts);
    /// "1,1" or "2, 0, 1".
    static MultiIndex parse(const std::string& text);

    const std::vector<int>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }
    int operator[](std::size_t j) const { return parts_.at(j); }
    /// |m|
    int total() const { return total_; }
    int max_part() const;
    std::string to_string() const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.parts_ == b.parts_; }

private:
    std::vector<int> parts_;
    int total_ = 0;
};

/// Simultaneous approximant of type (n, m): common denominator Q, deg Q <= |m|,
/// and numerators P_j with deg P_j <= n - m_j. Exact mode keeps opaque constant
/// terms apart: the true j-th numerator is P[j] + offsets[j] * Q.
template <class S>
struct HermitePadeApproximant {
    int n = 0;
    MultiIndex mindex{{1}};
    Polynomial<S> Qraw;
    std::vector<Polynomial<S>> Praw;
    Polynomial<S> Q;
    std::vector<Polynomial<S>> P;
    std::vector<OpaqueConstant> offsets;
    unsigned lambda = 0;
    /// Canonical denominator is scale * Q (see CanonicalForm).
    Float scale{1};
    bool canonical_exact = true;
    RootSet zeros;

    Float denominator_at(const Float& z) const;
    /// j-th component P_j(z)/Q(z), 0-based j.
    Float value_at(std::size_t j, const Float& z) const;
    Polynomial<Float> canonical_denominator() const;
};

/// Solves the stacked |m| x (|m|+1) system (m_j conditions from each f_j),
/// then divides Q and every P_j by their common factor and normalizes Q.
template <class S>
HermitePadeApproximant<S> compute_hermite(const SystemOfSeries& system, int n, const MultiIndex& mindex, const Context& ctx);

/// k-th component (1-based) as an incomplete approximant of type (n, |m|, m_k),
/// with any further cancellation between Q and P_k alone (float mode keeps a
/// root whose cancellation is uncertain).
template <class S>
PadeApproximant<S> component_view(const HermitePadeApproximant<S>& h, std::size_t k, const Context& ctx);

extern template struct HermitePadeApproximant<Exact>;
extern template struct HermitePadeApproximant<Float>;

}  // namespace rowpade

#endif
