#ifndef ROWPADE_GCD_HPP
#define ROWPADE_GCD_HPP

#include "rowpade/context.hpp"
#include "rowpade/polynomial.hpp"

#include <stdexcept>
#include <vector>

namespace rowpade {

class UncertainCancellation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class S>
struct GcdReduction {
    Polynomial<S> gcd;
    /// Inputs divided by gcd, in input order.
    std::vector<Polynomial<S>> quotients;
};

/// Monic gcd over Q(i) by the Euclidean remainder sequence. Zero inputs are
/// ignored; all inputs zero is an error.
Polynomial<Exact> gcd(const std::vector<Polynomial<Exact>>& polys);

/// Common factor of all inputs and the exact quotients.
GcdReduction<Exact> gcd_reduce(const std::vector<Polynomial<Exact>>& polys);

/// Float mode: the common factor is rebuilt from roots shared (within the
/// cluster radius) by every nonzero input. Throws UncertainCancellation when a
/// quotient leaves a remainder above sqrt(ctx.tolerance()) relative to its
/// dividend.
GcdReduction<Float> gcd_reduce(const std::vector<Polynomial<Float>>& polys, const Context& ctx);

inline GcdReduction<Exact> gcd_reduce(const Polynomial<Exact>& a, const Polynomial<Exact>& b) {
    return gcd_reduce(std::vector<Polynomial<Exact>>{a, b});
}
inline GcdReduction<Float> gcd_reduce(const Polynomial<Float>& a, const Polynomial<Float>& b, const Context& ctx) {
    return gcd_reduce(std::vector<Polynomial<Float>>{a, b}, ctx);
}

/// Exact division, throwing if b does not divide a.
Polynomial<Exact> exact_quotient(const Polynomial<Exact>& a, const Polynomial<Exact>& b);

}  // namespace rowpade

#endif
