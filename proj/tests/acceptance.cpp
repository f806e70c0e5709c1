// One line per acceptance criterion; exit status 1 if any fails.
#include "rowpade/hermite.hpp"
#include "rowpade/nullspace.hpp"
#include "rowpade/rows.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace rowpade;

namespace {

using P = Polynomial<Exact>;

// Tolerances.
constexpr double kRadiusLo = 1.85, kRadiusHi = 2.15;
constexpr double kUnitRadiusLo = 0.9, kUnitRadiusHi = 1.1;
constexpr double kScalarRate = 1.0 / 6, kScalarRateTol = 0.03;
constexpr double kComponentRateLo = 0.07, kComponentRateHi = 0.13;
constexpr double kGDenominatorBound = 1.0 / 3 + 0.05;
constexpr double kHDenominatorBound = 1.0 / 2 + 0.05;
constexpr double kDeltaMax = 0.55, kDeltaJLo = 0.45, kDeltaJHi = 0.55, kUnitDeltaMin = 0.9;
constexpr double kDivergenceMin = 1.0;
constexpr int kRandomSystems = 50;

struct Verdict {
    bool pass;
    std::string detail;
};

Exact q(long num, long den = 1) { return Exact(Rational(num) / Rational(den)); }

Rational two_to(int n) {
    Rational r(1);
    for (int i = 0; i < n; ++i) r *= 2;
    return r;
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(5);
    os << x;
    return os.str();
}

RowSequence<Exact> pair_row(const char* name, std::size_t k, int lo, int hi, const std::map<std::string, std::string>& params = {}) {
    return build_row<Exact>(RowSource::simultaneous(catalog(name, params), MultiIndex({1, 1}), k), lo, hi, Context::active());
}

const std::map<std::string, std::string> p2{{"p", "2"}};

Verdict fg_exact() {
    const Context ctx = Context::active();
    int bad = 0;
    for (int n = 3; n <= 20; ++n) {
        const auto h = compute_hermite<Exact>(catalog("5.1-fg"), n, MultiIndex({1, 1}), ctx);
        const P want = n % 2 == 0 ? P{q(-1), q(0), q(1)} : P{q(1), q(0), q(1)};
        if (h.Q != want) ++bad;
    }
    return {bad == 0, std::to_string(bad) + " of 18 denominators differ from z^2-1 / z^2+1"};
}

Verdict fw_exact() {
    const Context ctx = Context::active();
    int bad = 0, checked = 0;
    for (int n = 5; n <= 25; ++n, ++checked) {
        const auto h = compute_hermite<Exact>(catalog("5.1-fw", p2), n, MultiIndex({1, 1}), ctx);
        const Rational t = two_to(n);
        if (n % 2) {
            if (h.Q != P{Exact(-(t - 4) / (t - 1)), q(0), q(1)}) ++bad;
        } else {
            const P ref{q(-1), Exact(Rational(3) / (t - 2)), q(1)};
            if (h.Q.degree() != 2 || h.Q * ref.leading() != ref * h.Q.leading()) ++bad;
        }
    }
    return {bad == 0, std::to_string(bad) + " of " + std::to_string(checked) + " denominators off the closed forms"};
}

Verdict fw_radius() {
    auto row = pair_row("5.1-fw", 1, 10, 40, p2);
    const double r = estimate_rstar(row, FitOptions{std::pair{10, 40}, Subsequence::even}).rstar;
    return {r >= kRadiusLo && r <= kRadiusHi, "rstar = " + num(r) + ", band [" + num(kRadiusLo) + ", " + num(kRadiusHi) + "]"};
}

Verdict fg_radius() {
    auto row = pair_row("5.1-fg", 1, 3, 40);
    const double r1 = estimate_rstar(row).rstar;
    const double r2 = estimate_rstar(row.with_component(2)).rstar;
    auto ok = [](double r) { return r >= kUnitRadiusLo && r <= kUnitRadiusHi; };
    return {ok(r1) && ok(r2), "rstar = " + num(r1) + " and " + num(r2) + ", band [0.9, 1.1]"};
}

Verdict scalar_rate() {
    auto row = build_row<Float>(RowSource::scalar(catalog("5.2-g")[0], 1), 12, 40, Context::active());
    const auto K = exclude(CompactSet::circle(0.5, 512), row, 1e-2);
    std::map<int, double> e;
    for (int n = 12; n <= 40; ++n) e[n] = sup_error(row, n, K).convert_to<double>();
    const double rate = fit_rate(e, FitOptions{std::pair{12, 40}, Subsequence::automatic}).regression_rate;
    return {std::abs(rate - kScalarRate) <= kScalarRateTol, "rate = " + num(rate) + ", target 1/6 +- 0.03"};
}

Verdict component_rate() {
    auto row = pair_row("5.2-g", 2, 10, 36);
    const auto K = exclude(CompactSet::circle(1, 512), row, 1e-2);
    std::map<int, double> e;
    for (int n = 10; n <= 36; ++n) e[n] = sup_error(row, n, K).convert_to<double>();
    const double rate = fit_rate(e, FitOptions{std::pair{10, 36}, Subsequence::automatic}).regression_rate;
    return {rate >= kComponentRateLo && rate <= kComponentRateHi, "rate = " + num(rate) + ", band [0.07, 0.13]"};
}

double denominator_rate(const RowSequence<Exact>& row) {
    // (z - 1)(1 - z/2)
    const Polynomial<Float> target{Float(-1), Float(Real(1.5)), Float(Real(-0.5))};
    std::map<int, double> d;
    for (int n = row.n_min(); n <= row.n_max(); ++n)
        d[n] = coeff_norm_diff(target, row.canonical_denominator(n)).convert_to<double>();
    return fit_rate(d, FitOptions{std::pair{16, row.n_max()}, Subsequence::automatic}).regression_rate;
}

Verdict denominator_rates() {
    const double g = denominator_rate(pair_row("5.2-g", 1, 6, 40));
    auto h = pair_row("5.3-h", 1, 6, 40);
    auto hh = pair_row("5.3-hhat", 1, 6, 40);
    const double rh = denominator_rate(h);
    int differ = 0;
    for (int n = 6; n <= 40; ++n)
        if (h.simultaneous(n).Q != hh.simultaneous(n).Q) ++differ;
    return {g <= kGDenominatorBound && rh <= kHDenominatorBound && differ == 0,
            "g rate = " + num(g) + " (<= " + num(kGDenominatorBound) + "), h rate = " + num(rh) + " (<= " + num(kHDenominatorBound) +
                "), " + std::to_string(differ) + " h/hhat denominators differ"};
}

Verdict indicators() {
    auto fw = pair_row("5.1-fw", 1, 4, 40, p2);
    const auto a = indicator_report(fw, Float(1));
    auto fg = pair_row("5.1-fg", 1, 3, 40);
    const auto b = indicator_report(fg, Float(1));
    const bool ok = a.delta_big <= kDeltaMax && a.delta_j[0] >= kDeltaJLo && a.delta_j[0] <= kDeltaJHi && a.mu == 1 &&
                    b.delta_big >= kUnitDeltaMin && b.mu == 0;
    return {ok, "(f,w_2): Delta = " + num(a.delta_big) + ", delta_1 = " + num(a.delta_j[0]) + ", mu = " + std::to_string(a.mu) +
                    "; (f,g): Delta = " + num(b.delta_big) + ", mu = " + std::to_string(b.mu)};
}

PowerSeries random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> pole(-4, 4), weight(-3, 3), terms(1, 2);
    std::vector<SeriesTerm> parts;
    for (int k = terms(rng); k > 0; --k) {
        int a = 0;
        while (a == 0) a = pole(rng);
        int c = 0;
        while (c == 0) c = weight(rng);
        parts.push_back({q(c), rational_series(P{q(1)}, P{q(a), q(-1)})});
    }
    parts.push_back({q(1), polynomial_series({q(weight(rng) == 0 ? 1 : 2)})});
    return combine(parts);
}

Verdict properties() {
    std::mt19937 rng(77);
    const Context ctx = Context::active();
    int violations = 0;
    std::string first;
    auto flag = [&](int trial, const char* what) {
        if (violations++ == 0) first = " (first: system " + std::to_string(trial) + ", " + what + ")";
    };
    for (int trial = 0; trial < kRandomSystems; ++trial) {
        const int d = 1 + trial % 3;
        SystemOfSeries sys{"random", {}};
        for (int j = 0; j < d; ++j) sys.components.push_back(random_rational(rng));
        std::vector<int> parts(d, 0);
        const int budget = std::uniform_int_distribution<int>(1, 4)(rng);
        for (int t = 0; t < budget; ++t) ++parts[std::uniform_int_distribution<int>(0, d - 1)(rng)];
        const MultiIndex mi(parts);
        const int n = std::uniform_int_distribution<int>(std::max(mi.max_part(), 2), 15)(rng);
        try {
            const auto h = compute_hermite<Exact>(sys, n, mi, ctx);
            if (h.Qraw.degree() > mi.total()) flag(trial, "deg Q");
            for (int j = 0; j < d; ++j) {
                if (h.Praw[j].degree() > n - parts[j]) flag(trial, "deg P");
                const long need = n + 1L - static_cast<long>(h.lambda);
                if (static_cast<long>(linearization_order(h.Q, h.P[j], sys[j], static_cast<std::size_t>(n), ctx)) < need)
                    flag(trial, "order of contact");
            }
            const auto again = reduce_and_normalize(h.Q, h.P, ctx);
            if (again.Q != h.Q || again.P != h.P) flag(trial, "normalization not idempotent");

            auto row = build_row<Exact>(RowSource::simultaneous(sys, mi, 1), n, n + 1, ctx, 1);
            const auto t = telescope(row, n);
            if (t.deg_q > mi.total() - parts[0]) flag(trial, "telescope degree");

            const int m = parts[0] > 0 ? parts[0] : 1;
            const auto phi = sys[0].coeffs(static_cast<std::size_t>(n) + 1);
            const auto basis = nullspace_basis(condition_rows(phi, n, m, m + 1));
            Vector<Exact> other = basis.back() * q(-5, 2);
            for (std::size_t i = 0; i + 1 < basis.size(); ++i) other += basis[i] * q(static_cast<long>(i) + 2);
            std::vector<Reduction<Exact>> reduced;
            for (const auto& v : {basis.front(), other}) {
                const P Q(std::vector<Exact>(v.data(), v.data() + v.size()));
                if (Q.is_zero()) continue;
                reduced.push_back(reduce_and_normalize(Q, truncated(Q * P(phi), n - m), ctx));
            }
            if (reduced.size() == 2 && reduced[0].Q != reduced[1].Q || reduced[0].P != reduced[1].P) flag(trial, "scalar approximant not unique");
        } catch (const std::exception& e) {
            flag(trial, e.what());
        }
    }
    return {violations == 0, std::to_string(violations) + " violations over " + std::to_string(kRandomSystems) + " systems" + first};
}

Verdict divergence() {
    auto row = pair_row("5.1-fw", 1, 10, 31, p2);
    std::map<int, double> jumps;
    for (int n = 10; n <= 30; ++n)
        jumps[n] = abs(row.member(n + 1).value_at(Float(3)) - row.member(n).value_at(Float(3))).convert_to<double>();
    const double rate = fit_rate(jumps, FitOptions{std::pair{10, 30}, Subsequence::automatic}).regression_rate;
    return {rate > kDivergenceMin, "growth rate at z = 3: " + num(rate) + " (> 1)"};
}

}  // namespace

int main() {
    PrecisionScope scope(256);
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"exact denominators of (f, g), n in [3, 20]", fg_exact},
        {"exact denominators of (f, w_2), n in [5, 25]", fw_exact},
        {"radius of (f, w_2) component 1, even n in [10, 40]", fw_radius},
        {"radius of (f, g) components 1 and 2", fg_radius},
        {"scalar error rate of g1 on |z| = 1/2", scalar_rate},
        {"component 2 error rate of g on |z| = 1", component_rate},
        {"denominator rates of g and h; h and hhat agree", denominator_rates},
        {"indicators at a = 1 for (f, w_2) and (f, g)", indicators},
        {"invariants on random rational systems", properties},
        {"divergence of (f, w_2) component 1 at z = 3", divergence},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v{false, ""};
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += v.pass ? 0 : 1;
        std::printf("criterion %2zu %s  %s: %s [%.2fs]\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first, v.detail.c_str(), secs);
    }
    std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
