#include "rowpade/gcd.hpp"

#include "rowpade/roots.hpp"

namespace rowpade {

Polynomial<Exact> gcd(const std::vector<Polynomial<Exact>>& polys) {
    Polynomial<Exact> g;
    bool any = false;
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        if (!any) {
            g = p;
            any = true;
            continue;
        }
        Polynomial<Exact> a = g;
        Polynomial<Exact> b = p;
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = monic(r);
        }
        g = std::move(a);
        if (g.degree() == 0) break;
    }
    if (!any) throw std::invalid_argument("gcd of zero polynomials");
    return monic(g);
}

Polynomial<Exact> exact_quotient(const Polynomial<Exact>& a, const Polynomial<Exact>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("exact_quotient: nonzero remainder");
    return q;
}

GcdReduction<Exact> gcd_reduce(const std::vector<Polynomial<Exact>>& polys) {
    GcdReduction<Exact> out{gcd(polys), {}};
    for (const auto& p : polys) out.quotients.push_back(exact_quotient(p, out.gcd));
    return out;
}

namespace {

unsigned multiplicity_near(const RootSet& set, const Float& z, const Real& radius) {
    unsigned m = 0;
    for (const auto& r : set.roots)
        if (abs(r.value - z) < radius) m += r.multiplicity;
    return m;
}

}  // namespace

GcdReduction<Float> gcd_reduce(const std::vector<Polynomial<Float>>& polys, const Context& ctx) {
    std::vector<const Polynomial<Float>*> nonzero;
    for (const auto& p : polys)
        if (!p.is_zero()) nonzero.push_back(&p);
    if (nonzero.empty()) throw std::invalid_argument("gcd of zero polynomials");

    const Real radius(ctx.cluster_radius());
    Polynomial<Float> g = Polynomial<Float>::constant(Float(1));
    bool constant_present = false;
    for (const auto* p : nonzero)
        if (p->degree() == 0) constant_present = true;

    if (nonzero.size() == 1) {
        g = monic(*nonzero.front());
    } else if (!constant_present) {
        std::vector<RootSet> sets;
        for (const auto* p : nonzero) sets.push_back(roots(*p, ctx));
        std::vector<Float> common;
        for (const auto& r : sets.front().roots) {
            unsigned mult = r.multiplicity;
            for (std::size_t j = 1; j < sets.size() && mult > 0; ++j)
                mult = std::min(mult, multiplicity_near(sets[j], r.value, radius));
            for (unsigned k = 0; k < mult; ++k) common.push_back(r.value);
        }
        g = Polynomial<Float>::from_roots(common);
    }

    const Real tol = mp::sqrt(ctx.tolerance());
    GcdReduction<Float> out{g, {}};
    for (const auto& p : polys) {
        if (p.is_zero()) {
            out.quotients.emplace_back();
            continue;
        }
        auto [q, r] = divmod(p, g);
        if (coefficient_scale(r) > tol * coefficient_scale(p))
            throw UncertainCancellation("uncertain cancellation: division remainder above tolerance");
        out.quotients.push_back(std::move(q));
    }
    return out;
}

}  // namespace rowpade
