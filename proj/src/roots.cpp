#include "rowpade/roots.hpp"

#include <boost/math/constants/constants.hpp>

#include <numeric>

namespace rowpade {

std::size_t RootSet::total_multiplicity() const {
    std::size_t total = 0;
    for (const auto& r : roots) total += r.multiplicity;
    return total;
}

std::vector<Float> RootSet::expanded() const {
    std::vector<Float> out;
    for (const auto& r : roots)
        for (unsigned k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
    return out;
}

namespace {

// |p(z)| and sum_k |a_k| |z|^k together.
std::pair<Real, Real> residual_and_scale(const Polynomial<Float>& p, const Float& z) {
    const Real az = abs(z);
    Real scale(0);
    for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it) scale = scale * az + abs(*it);
    return {abs(p(z)), scale};
}

std::size_t find(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
}

}  // namespace

RootSet roots(const Polynomial<Float>& p, const Context& ctx) {
    if (p.degree() < 1) throw std::domain_error("no roots");
    const std::size_t zero_order = p.valuation();
    const Polynomial<Float> q = shifted_down(p, zero_order);
    const int n = q.degree();

    std::vector<Float> z;
    if (n > 0) {
        // Start on a circle whose radius is the geometric mean of the root moduli.
        const Real r = mp::pow(abs(q[0]) / abs(q.leading()), Real(1) / Real(n));
        const Real two_pi = 2 * boost::math::constants::pi<Real>();
        for (int k = 0; k < n; ++k) {
            const Real theta = two_pi * k / n + Real(0.4);
            z.emplace_back(r * mp::cos(theta), r * mp::sin(theta));
        }
    }

    const Polynomial<Float> dq = derivative(q);
    const Real tol = ctx.tolerance();
    std::vector<bool> done(z.size(), false);
    int sweep = 0;
    for (; sweep < ctx.max_sweeps; ++sweep) {
        bool all = true;
        for (std::size_t k = 0; k < z.size(); ++k) {
            auto [res, scale] = residual_and_scale(q, z[k]);
            if (res <= tol * scale) {
                done[k] = true;
                continue;
            }
            done[k] = false;
            all = false;
            const Float ratio = q(z[k]) / dq(z[k]);
            Float repulsion(0);
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k && z[j] != z[k]) repulsion += Float(1) / (z[k] - z[j]);
            const Float denom = Float(1) - ratio * repulsion;
            z[k] -= denom.is_zero() ? ratio : ratio / denom;
        }
        if (all) break;
    }
    if (sweep == ctx.max_sweeps) {
        std::vector<Real> residuals;
        for (const auto& zk : z) residuals.push_back(abs(q(zk)));
        throw RootFindingError("root refinement did not converge in " + std::to_string(ctx.max_sweeps) + " sweeps", z,
                               residuals);
    }

    // Cluster by pairwise distance.
    std::vector<std::size_t> parent(z.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const Real radius(ctx.cluster_radius());
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (abs(z[i] - z[j]) < radius) parent[find(parent, i)] = find(parent, j);

    RootSet out;
    if (zero_order > 0) out.roots.push_back({Float(0), static_cast<unsigned>(zero_order), Real(0)});
    std::vector<std::size_t> slot(z.size(), z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const std::size_t r = find(parent, i);
        if (slot[r] == z.size()) {
            slot[r] = out.roots.size();
            out.roots.push_back({z[i], 1, Real(0)});
        } else {
            Root& root = out.roots[slot[r]];
            root.value = (root.value * Float(Real(root.multiplicity)) + z[i]) / Float(Real(root.multiplicity + 1));
            ++root.multiplicity;
        }
    }
    for (auto& r : out.roots)
        if (!r.value.is_zero() || zero_order == 0) r.residual = abs(p(r.value));
    return out;
}

RootSet roots(const Polynomial<Exact>& p, const Context& ctx) { return roots(to_float(p), ctx); }

}  // namespace rowpade
