#ifndef ROWPADE_ROWS_HPP
#define ROWPADE_ROWS_HPP

#include "rowpade/hermite.hpp"
#include "rowpade/pade.hpp"

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rowpade {

/// What a row is built from: a scalar series with (m, mstar), or one component
/// of a simultaneous approximant with multi-index mindex.
struct RowSource {
    enum class Kind { scalar, system };
    Kind kind = Kind::scalar;

    std::optional<PowerSeries> series;
    int m = 0;
    int mstar = 0;
    IncompleteSelector selector;

    std::optional<SystemOfSeries> system;
    std::optional<MultiIndex> mindex;
    /// 1-based.
    std::size_t component = 1;

    static RowSource scalar(PowerSeries f, int m, std::optional<int> mstar = {},
                            IncompleteSelector selector = IncompleteSelector::canonical());
    static RowSource simultaneous(SystemOfSeries s, MultiIndex mindex, std::size_t component = 1);

    /// m, or |m| for a system.
    int degree() const;
    /// mstar, or m_k for component k.
    int conditions() const;
    int min_n() const;
    /// f, or f_k.
    const PowerSeries& target() const;
    /// Known poles of every series involved.
    std::vector<KnownPole> reference_poles() const;
    std::string describe() const;
};

/// Approximants of one source for every n in [n_min, n_max]. Immutable once
/// built and safe to share between threads.
template <class S>
class RowSequence {
public:
    RowSequence(RowSource source, int n_min, int n_max, Context ctx, std::vector<PadeApproximant<S>> views,
                std::vector<HermitePadeApproximant<S>> hermite);

    const RowSource& source() const { return source_; }
    const Context& context() const { return ctx_; }
    int n_min() const { return n_min_; }
    int n_max() const { return n_max_; }
    bool contains(int n) const { return n >= n_min_ && n <= n_max_; }

    /// The scalar approximant, or the component view for a system row.
    const PadeApproximant<S>& member(int n) const;
    /// Only for system rows.
    const HermitePadeApproximant<S>& simultaneous(int n) const;

    /// Zeros of the (common) denominator.
    const RootSet& zeros(int n) const;
    /// Canonical (common) denominator.
    Polynomial<Float> canonical_denominator(int n) const;
    Float denominator_at(int n, const Float& a) const;

    /// Same simultaneous approximants viewed through another component.
    RowSequence with_component(std::size_t k) const;

private:
    std::size_t index(int n) const;

    RowSource source_;
    int n_min_;
    int n_max_;
    Context ctx_;
    std::vector<PadeApproximant<S>> views_;
    std::vector<HermitePadeApproximant<S>> hermite_;
};

/// Computes every member, spreading the n values over jobs threads (0 means
/// hardware concurrency). Set the Real precision before calling.
template <class S>
RowSequence<S> build_row(const RowSource& source, int n_min, int n_max, const Context& ctx, unsigned jobs = 0);

class TelescopeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// z^(lambda_n + lambda_{n+1}) (Q_n P_{n+1} - Q_{n+1} P_n) = A z^(n+1) q, with
/// the canonical q given as q_scale * q.
template <class S>
struct TelescopeTerm {
    int n = 0;
    Float A;
    /// Set when A is known exactly.
    std::optional<Exact> A_exact;
    Polynomial<S> q;
    Float q_scale{1};
    int deg_q = 0;
};

template <class S>
TelescopeTerm<S> telescope(const RowSequence<S>& row, int n);

class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Subsequence { all, even, odd, automatic };

struct FitOptions {
    /// Inclusive; defaults to the last two thirds of the available n.
    std::optional<std::pair<int, int>> window;
    Subsequence subsequence = Subsequence::automatic;
};

/// Log-linear estimate of limsup value_n^(1/n).
struct RateFit {
    std::map<int, double> values;
    double regression_rate = 0;
    double tail_max_rate = 0;
    std::pair<int, int> window{0, 0};
    /// RMS of the log residuals.
    double residual = 0;
    /// Positive values entering the regression.
    std::size_t points = 0;
    std::string subsequence = "all";
    /// "regression", "tail-max" (too few positive values) or "zero".
    std::string estimator = "regression";
    bool all_zero = false;
};

/// Least-squares line through (n, log value_n) over the window, zeros skipped.
/// With Subsequence::automatic, even and odd n are also fitted apart; when the
/// pooled fit is clearly worse than both, or one parity lacks data, the larger
/// parity rate is taken. Throws InsufficientData on fewer than 4 positive
/// values unless every value is zero (rate 0, all_zero set).
RateFit fit_rate(const std::map<int, double>& values, const FitOptions& options = {});

struct RadiusEstimate {
    std::map<int, double> per_n;
    double regression_rate = 0;
    double tail_max_rate = 0;
    /// +inf when the tail terms all vanish.
    double rstar = 0;
    std::string estimator_used;
    RateFit fit;
};

/// Radius from the decay of |A_n| over the row's telescope terms.
template <class S>
RadiusEstimate estimate_rstar(const RowSequence<S>& row, const FitOptions& options = {});

struct IndicatorOptions {
    FitOptions fit;
    double decision_tol = 0.05;
};

struct IndicatorReport {
    Float a;
    double delta_big = 0;
    /// Before clamping to [0, 1].
    double delta_big_raw = 0;
    std::vector<double> delta_j;
    /// Fewest zeros over the window.
    int mprime = 0;
    int mu = 0;
    RateFit delta_fit;
    std::vector<RateFit> delta_j_fits;
};

/// Rate of |Q_n(a)| with the canonical denominator, clamped to [0, 1].
template <class S>
double delta_indicator(const RowSequence<S>& row, const Float& a, const IndicatorOptions& options = {},
                       RateFit* fit = nullptr);

/// Rates of min(1, |zeta_{n,j} - a|) with zeros sorted by distance to a;
/// entries past the fewest zero count are 1. Made nondecreasing in j.
template <class S>
std::vector<double> delta_j_indicators(const RowSequence<S>& row, const Float& a, const IndicatorOptions& options = {},
                                       std::vector<RateFit>* fits = nullptr, int* mprime = nullptr);

/// Number of delta_j below 1 - decision_tol; 0 when delta_big is not.
int mu_indicator(const IndicatorReport& report, double decision_tol = 0.05);

template <class S>
IndicatorReport indicator_report(const RowSequence<S>& row, const Float& a, const IndicatorOptions& options = {});

/// Sample points, optionally thinned by exclusion disks.
struct CompactSet {
    std::vector<Float> points;
    std::string label;
    std::optional<double> epsilon;
    std::size_t excluded = 0;

    static CompactSet circle(double radius, std::size_t points, std::complex<double> center = 0);
    /// "circle:r=1,points=512" with optional "cx=..,cy=..".
    static CompactSet parse(const std::string& text);
};

/// Removes points within eps/(6 m n^2) of a zero of any member, or within
/// eps/(6 m) of a known pole.
template <class S>
CompactSet exclude(const CompactSet& K, const RowSequence<S>& row, double eps);

/// max over K of |f(z) - R_n(z)|.
template <class S>
Real sup_error(const RowSequence<S>& row, int n, const CompactSet& K);

/// Max modulus of the coefficient differences.
Real coeff_norm_diff(const Polynomial<Float>& target, const Polynomial<Float>& q);

struct ComponentPoleData {
    double rstar = 0;
    std::vector<KnownPole> poles;
};

/// 1-based component that carries the pole a: highest order among components
/// with a inside their disk, ties to the larger radius, then the lower index.
std::size_t assign_k(const std::vector<ComponentPoleData>& components, std::complex<double> a, double tol = 1e-9);

extern template class RowSequence<Exact>;
extern template class RowSequence<Float>;

}  // namespace rowpade

#endif
