#ifndef ROWPADE_CONTEXT_HPP
#define ROWPADE_CONTEXT_HPP

#include "rowpade/complex.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace rowpade {

/// Numerical settings shared by every float-mode computation.
struct Context {
    unsigned precision_bits = 256;
    /// Root refinement sweep cap.
    int max_sweeps = 200;

    /// Roots closer than this are treated as one cluster. 1e-8 at 256 bits,
    /// shrinking by a factor 2 for every 8 extra bits.
    double cluster_radius() const { return 1e-8 * std::exp2(-(static_cast<double>(precision_bits) - 256.0) / 8.0); }

    /// Relative tolerance for residual checks: 2^(-3/4 * bits).
    Real tolerance() const {
        Real t(2);
        return mp::pow(t, -static_cast<long>(precision_bits * 3 / 4));
    }

    /// Settings matching the precision currently in force for Real.
    static Context active();

    /// Magnitude below which a float coefficient counts as zero, relative to the
    /// polynomial's coefficient scale.
    Real zero_threshold() const { return tolerance(); }
};

/// Sets the process-wide Real precision for its lifetime. Real values created
/// while the scope is active carry this precision; nested scopes restore the
/// previous setting on exit.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision()), saved_bits_(active_bits_.load()) {
        if (bits < 64) throw std::invalid_argument("precision below 64 bits");
        Real::default_precision(bits_to_digits10(bits));
        active_bits_ = bits;
    }
    explicit PrecisionScope(const Context& ctx) : PrecisionScope(ctx.precision_bits) {}
    ~PrecisionScope() {
        Real::default_precision(saved_);
        active_bits_ = saved_bits_;
    }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

    static unsigned bits_to_digits10(unsigned bits) { return bits * 301u / 1000u + 1u; }
    /// Bits set by the innermost live scope; 0 when none is active.
    static unsigned active_bits() { return active_bits_.load(); }

private:
    unsigned saved_;
    unsigned saved_bits_;
    inline static std::atomic<unsigned> active_bits_{0};
};

inline Context Context::active() {
    Context ctx;
    if (const unsigned bits = PrecisionScope::active_bits()) {
        ctx.precision_bits = bits;
    } else {
        Real probe;
        ctx.precision_bits = static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
    }
    return ctx;
}

}  // namespace rowpade

#endif
