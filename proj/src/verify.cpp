#include "rowpade/verify.hpp"

#include "rowpade/hermite.hpp"
#include "rowpade/nullspace.hpp"
#include "rowpade/rows.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

namespace rowpade {

namespace {

using P = Polynomial<Exact>;
using Params = std::map<std::string, std::string>;

struct Outcome {
    bool passed = false;
    std::string measured;
    std::string expected;
};

struct Check {
    const char* suite;
    const char* name;
    std::function<Outcome(unsigned jobs)> run;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

Exact lit(long num, long den = 1) { return Exact(Rational(num) / Rational(den)); }

Rational pow2(int n) {
    Rational r(1);
    for (int i = 0; i < n; ++i) r *= 2;
    return r;
}

RowSequence<Exact> pair_row(const std::string& name, std::size_t k, int lo, int hi, unsigned jobs, const Params& params = {}) {
    return build_row<Exact>(RowSource::simultaneous(catalog(name, params), MultiIndex({1, 1}), k), lo, hi, Context::active(), jobs);
}

Outcome within(double x, double lo, double hi) {
    return {x >= lo && x <= hi, fmt(x), "[" + fmt(lo) + ", " + fmt(hi) + "]"};
}

Outcome fg_denominators(unsigned jobs) {
    auto row = pair_row("5.1-fg", 1, 3, 20, jobs);
    int bad = 0;
    for (int n = 3; n <= 20; ++n) {
        const P want = n % 2 ? P{lit(1), lit(0), lit(1)} : P{lit(-1), lit(0), lit(1)};
        if (row.simultaneous(n).Q != want || !row.simultaneous(n).canonical_exact) ++bad;
    }
    return {bad == 0, std::to_string(bad) + " mismatches over n in [3, 20]", "z^2 - 1 (even n), z^2 + 1 (odd n), exactly"};
}

Outcome fw_denominators(unsigned jobs) {
    auto row = pair_row("5.1-fw", 1, 5, 25, jobs, {{"p", "2"}});
    int bad = 0;
    for (int n = 5; n <= 25; ++n) {
        const auto& Q = row.simultaneous(n).Q;
        const Rational t = pow2(n);
        if (n % 2) {
            if (Q != P{Exact(-(t - 4) / (t - 1)), lit(0), lit(1)}) ++bad;
        } else {
            const P target{lit(-1), Exact(Rational(3) / (t - 2)), lit(1)};
            if (Q.is_zero() || Q * target.leading() != target * Q.leading()) ++bad;
        }
    }
    return {bad == 0, std::to_string(bad) + " mismatches over n in [5, 25]",
            "z^2 - (2^n-4)/(2^n-1) (odd n), multiple of z^2 + 3/(2^n-2) z - 1 (even n)"};
}

Outcome h_hhat_identical(unsigned jobs) {
    auto h = pair_row("5.3-h", 1, 4, 30, jobs);
    auto hh = pair_row("5.3-hhat", 1, 4, 30, jobs);
    int bad = 0;
    for (int n = 4; n <= 30; ++n) {
        const auto& a = h.simultaneous(n).Q.coefficients();
        const auto& b = hh.simultaneous(n).Q.coefficients();
        if (a.size() != b.size()) {
            ++bad;
            continue;
        }
        for (std::size_t k = 0; k < a.size(); ++k)
            if (to_string(a[k]) != to_string(b[k])) {
                ++bad;
                break;
            }
    }
    return {bad == 0, std::to_string(bad) + " differing n in [4, 30]", "identical coefficient strings"};
}

Outcome fw_radius(unsigned jobs) {
    auto row = pair_row("5.1-fw", 1, 10, 40, jobs, {{"p", "2"}});
    return within(estimate_rstar(row, FitOptions{std::pair{10, 40}, Subsequence::even}).rstar, 1.85, 2.15);
}

Outcome fg_radius(unsigned jobs) {
    auto row = pair_row("5.1-fg", 1, 3, 40, jobs);
    const double r1 = estimate_rstar(row).rstar;
    const double r2 = estimate_rstar(row.with_component(2)).rstar;
    return {r1 >= 0.9 && r1 <= 1.1 && r2 >= 0.9 && r2 <= 1.1, fmt(r1) + ", " + fmt(r2), "both in [0.9, 1.1]"};
}

Outcome fw_indicators(unsigned jobs) {
    auto row = pair_row("5.1-fw", 1, 4, 40, jobs, {{"p", "2"}});
    const auto r = indicator_report(row, Float(1));
    const bool ok = r.delta_big <= 0.55 && r.delta_j.at(0) >= 0.45 && r.delta_j.at(0) <= 0.55 && r.mu == 1;
    return {ok, "Delta=" + fmt(r.delta_big) + " delta_1=" + fmt(r.delta_j.at(0)) + " mu=" + std::to_string(r.mu),
            "Delta <= 0.55, delta_1 in [0.45, 0.55], mu = 1"};
}

Outcome fg_indicators(unsigned jobs) {
    auto row = pair_row("5.1-fg", 1, 3, 40, jobs);
    const auto r = indicator_report(row, Float(1));
    return {r.delta_big >= 0.9 && r.mu == 0, "Delta=" + fmt(r.delta_big) + " mu=" + std::to_string(r.mu), "Delta >= 0.9, mu = 0"};
}

Outcome scalar_error_rate(unsigned jobs) {
    const auto g1 = catalog("5.2-g")[0];
    auto row = build_row<Float>(RowSource::scalar(g1, 1), 12, 40, Context::active(), jobs);
    const auto K = exclude(CompactSet::circle(0.5, 512), row, 1e-2);
    std::map<int, double> e;
    for (int n = 12; n <= 40; ++n) e[n] = sup_error(row, n, K).convert_to<double>();
    return within(fit_rate(e, FitOptions{std::pair{12, 40}, Subsequence::automatic}).regression_rate, 1.0 / 6 - 0.03, 1.0 / 6 + 0.03);
}

Outcome component_error_rate(unsigned jobs) {
    auto row = pair_row("5.2-g", 2, 10, 36, jobs);
    const auto K = exclude(CompactSet::circle(1, 512), row, 1e-2);
    std::map<int, double> e;
    for (int n = 10; n <= 36; ++n) e[n] = sup_error(row, n, K).convert_to<double>();
    return within(fit_rate(e, FitOptions{std::pair{10, 36}, Subsequence::automatic}).regression_rate, 0.07, 0.13);
}

Outcome denominator_rate(const std::string& name, double bound, unsigned jobs) {
    auto row = pair_row(name, 1, 6, 40, jobs);
    const Polynomial<Float> target{Float(-1), Float(Real(3) / 2), Float(Real(-1) / 2)};
    std::map<int, double> d;
    for (int n = 6; n <= 40; ++n) d[n] = coeff_norm_diff(target, row.canonical_denominator(n)).convert_to<double>();
    const double rate = fit_rate(d, FitOptions{std::pair{16, 40}, Subsequence::automatic}).regression_rate;
    return {rate <= bound, fmt(rate), "<= " + fmt(bound)};
}

Outcome divergence(unsigned jobs) {
    auto row = pair_row("5.1-fw", 1, 10, 31, jobs, {{"p", "2"}});
    std::map<int, double> v;
    const Float z(3);
    for (int n = 10; n <= 30; ++n) v[n] = abs(row.member(n + 1).value_at(z) - row.member(n).value_at(z)).convert_to<double>();
    const double rate = fit_rate(v, FitOptions{std::pair{10, 30}, Subsequence::automatic}).regression_rate;
    return {rate > 1, fmt(rate), "> 1"};
}

// sum of one or two c/(a - z) with small integer a, c, plus a constant
PowerSeries random_component(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(1, 5), sign(0, 1), count(1, 2), weight(1, 3);
    std::vector<SeriesTerm> terms;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
        const long a = pick(rng) * (sign(rng) ? 1 : -1);
        terms.push_back({lit(weight(rng) * (sign(rng) ? 1 : -1)), rational_series(P{lit(1)}, P{lit(a), lit(-1)})});
    }
    terms.push_back({lit(1), polynomial_series({lit(weight(rng))})});
    return combine(terms);
}

Outcome random_systems(unsigned) {
    std::mt19937 rng(20240611);
    const Context ctx = Context::active();
    int failures = 0;
    std::string first;
    auto fail = [&](int trial, const std::string& what) {
        if (failures++ == 0) first = "trial " + std::to_string(trial) + ": " + what;
    };
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> dims(1, 3), part(0, 2);
        const int d = dims(rng);
        SystemOfSeries sys{"random", {}};
        for (int j = 0; j < d; ++j) sys.components.push_back(random_component(rng));
        std::vector<int> parts;
        int total = 0;
        for (int j = 0; j < d; ++j) {
            parts.push_back(std::min(part(rng), 4 - total));
            total += parts.back();
        }
        if (total == 0) parts[0] = total = 1;
        const MultiIndex mi(parts);
        const int n = std::uniform_int_distribution<int>(std::max(mi.max_part(), 2), 15)(rng);
        try {
            const auto h = compute_hermite<Exact>(sys, n, mi, ctx);
            if (h.Qraw.degree() > total) fail(trial, "denominator degree");
            for (int j = 0; j < d; ++j) {
                if (h.Praw[j].degree() > n - parts[j]) fail(trial, "numerator degree");
                const long bound = n + 1L - static_cast<long>(h.lambda);
                if (static_cast<long>(linearization_order(h.Q, h.P[j], sys[j], static_cast<std::size_t>(n), ctx)) < bound)
                    fail(trial, "order of contact");
            }
            const auto again = reduce_and_normalize(h.Q, h.P, ctx);
            if (again.Q != h.Q || again.P != h.P || again.lambda != 0) fail(trial, "normalization not idempotent");

            auto row = build_row<Exact>(RowSource::simultaneous(sys, mi, 1), n, n + 1, ctx, 1);
            if (telescope(row, n).deg_q > total - parts[0]) fail(trial, "telescope degree");

            // two different nullspace solutions of the scalar system reduce alike
            const int m = std::max(1, parts[0]);
            const auto phi = sys[0].coeffs(static_cast<std::size_t>(n) + 1);
            const auto M = condition_rows(phi, n, m, m + 1);
            const auto basis = nullspace_basis(M);
            Vector<Exact> mix = basis.front() * lit(3);
            for (std::size_t i = 1; i < basis.size(); ++i) mix += basis[i] * lit(static_cast<long>(2 * i + 1), 7);
            std::optional<Reduction<Exact>> ref;
            for (const auto& v : {basis.front(), mix}) {
                const P Q(std::vector<Exact>(v.data(), v.data() + v.size()));
                if (Q.is_zero()) continue;
                auto r = reduce_and_normalize(Q, truncated(Q * P(phi), n - m), ctx);
                if (ref && (r.Q != ref->Q || r.P != ref->P)) fail(trial, "scalar approximant not unique");
                if (!ref) ref = std::move(r);
            }
        } catch (const std::exception& e) {
            fail(trial, e.what());
        }
    }
    return {failures == 0, std::to_string(failures) + " failures in 50 systems" + (first.empty() ? "" : " (" + first + ")"),
            "all invariants hold"};
}

const std::vector<Check>& checks() {
    static const std::vector<Check> list = {
        {"exact-denominators", "fg-alternating-denominators", fg_denominators},
        {"exact-denominators", "fw-closed-form-denominators", fw_denominators},
        {"exact-denominators", "h-hhat-identical-denominators", h_hhat_identical},
        {"radius", "fw-radius", fw_radius},
        {"radius", "fg-radius", fg_radius},
        {"indicators", "fw-indicators-at-1", fw_indicators},
        {"indicators", "fg-indicators-at-1", fg_indicators},
        {"rates", "g1-scalar-error-rate", scalar_error_rate},
        {"rates", "g-component-2-error-rate", component_error_rate},
        {"rates", "g-denominator-rate", [](unsigned j) { return denominator_rate("5.2-g", 1.0 / 3 + 0.05, j); }},
        {"rates", "h-denominator-rate", [](unsigned j) { return denominator_rate("5.3-h", 1.0 / 2 + 0.05, j); }},
        {"rates", "fw-divergence-at-3", divergence},
        {"properties", "random-rational-systems", random_systems},
    };
    return list;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names = {"exact-denominators", "radius", "indicators", "rates", "properties", "all"};
    return names;
}

std::vector<CheckResult> run_verify(const std::string& suite, unsigned jobs) {
    if (std::find(verify_suites().begin(), verify_suites().end(), suite) == verify_suites().end())
        throw std::invalid_argument("unknown suite '" + suite + "'");
    PrecisionScope scope(256);
    std::vector<CheckResult> out;
    for (const auto& c : checks()) {
        if (suite != "all" && suite != c.suite) continue;
        CheckResult r;
        r.suite = c.suite;
        r.name = c.name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Outcome o = c.run(jobs);
            r.passed = o.passed;
            r.measured = o.measured;
            r.expected = o.expected;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace rowpade
