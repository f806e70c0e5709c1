#ifndef ROWPADE_ROOTS_HPP
#define ROWPADE_ROOTS_HPP

#include "rowpade/context.hpp"
#include "rowpade/polynomial.hpp"

#include <stdexcept>
#include <vector>

namespace rowpade {

struct Root {
    Float value;
    unsigned multiplicity = 1;
    /// |p(value)| at the reported location.
    Real residual;
};

/// Roots of one polynomial; multiplicities sum to its degree.
struct RootSet {
    std::vector<Root> roots;

    std::size_t total_multiplicity() const;
    /// Every root repeated according to its multiplicity.
    std::vector<Float> expanded() const;
};

class RootFindingError : public std::runtime_error {
public:
    RootFindingError(const std::string& what, std::vector<Float> iterate, std::vector<Real> residuals)
        : std::runtime_error(what), best_iterate(std::move(iterate)), residuals(std::move(residuals)) {}

    std::vector<Float> best_iterate;
    std::vector<Real> residuals;
};

/// All complex roots by simultaneous Aberth-Ehrlich refinement at the context
/// precision. A root is accepted once |p(z)| <= tol * sum_k |a_k| |z|^k; roots
/// closer than ctx.cluster_radius() are merged into one entry.
RootSet roots(const Polynomial<Float>& p, const Context& ctx);
RootSet roots(const Polynomial<Exact>& p, const Context& ctx);

}  // namespace rowpade

#endif
