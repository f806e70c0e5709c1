#include "doctest.h"

#include "rowpade/context.hpp"
#include "rowpade/series.hpp"

#include <cmath>
#include <random>
#include <thread>

using namespace rowpade;

namespace {

Exact q(long num, long den = 1) { return Exact(Rational(num) / Rational(den)); }
using P = Polynomial<Exact>;

const double inf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("coeff: examples") {
    PrecisionScope scope(256);
    CHECK(rational_series(P{q(1)}, P{q(1), q(-1)}).coeff(7) == q(1));
    const auto even = rational_series(P{q(1)}, P{q(1), q(0), q(-1)});
    CHECK(even.coeff(5) == q(0));
    CHECK(even.coeff(6) == q(1));
    CHECK(log_shift_series(q(3)).coeff(2) == q(-1, 18));
}

TEST_CASE("log(a - z) coefficients match the integrated geometric series") {
    PrecisionScope scope(256);
    for (long a : {3L, 10L, -2L}) {
        const auto f = log_shift_series(q(a));
        // d/dz log(a - z) = -1/(a - z); integrate termwise.
        const auto d = rational_series(P{q(-1)}, P{q(a), q(-1)});
        for (std::size_t k = 1; k < 25; ++k) CHECK(f.coeff(k) == d.coeff(k - 1) / Exact(static_cast<int>(k)));
        CHECK(f.coeff(0) == q(0));
        CHECK_FALSE(f.opaque().is_zero());
    }
    CHECK(log_shift_series(q(3)).coeff(1) == q(-1, 3));
    CHECK(log_shift_series(q(10)).coeff(3) == q(-1, 3000));
    const auto one = log_shift_series(q(1));
    CHECK(one.coeff(0) == q(0));
    CHECK(one.opaque().is_zero());
    CHECK_THROWS_AS(log_shift_series(q(0)), SeriesError);
}

TEST_CASE("rational_series") {
    PrecisionScope scope(256);
    SUBCASE("geometric") {
        const auto f = rational_series(P{q(1)}, P{q(1), q(-1)});
        for (std::size_t k = 0; k < 30; ++k) CHECK(f.coeff(k) == q(1));
    }
    SUBCASE("alternating odd pattern") {
        const auto g = rational_series(P{q(0), q(1)}, P{q(1), q(0), q(1)});
        const long expect[] = {0, 1, 0, -1, 0, 1, 0, -1};
        for (std::size_t k = 0; k < 8; ++k) CHECK(g.coeff(k) == q(expect[k]));
    }
    SUBCASE("two poles against partial fractions") {
        const auto f = rational_series(P{q(1)}, P{q(1), q(-1)} * P{q(2), q(-1)});
        CHECK(f.coeff(0) == q(1, 2));
        CHECK(f.coeff(1) == q(3, 4));
        // 1/((1-z)(2-z)) = 1/(1-z) - 1/(2-z): phi_k = 1 - 2^-(k+1)
        Rational half_pow(1, 2);
        for (std::size_t k = 0; k < 40; ++k) {
            CHECK(f.coeff(k) == Exact(Rational(1) - half_pow));
            half_pow /= 2;
        }
        REQUIRE(f.analytics());
        CHECK(f.analytics()->pole_order({1, 0}) == 1);
        CHECK(f.analytics()->pole_order({2, 0}) == 1);
    }
    SUBCASE("undefined at origin") {
        CHECK_THROWS_WITH_AS(rational_series(P{q(1)}, P{q(0), q(1)}), "series not defined at origin", SeriesError);
    }
    SUBCASE("closed form evaluator matches P/Q") {
        const auto f = rational_series(P{q(1), q(2)}, P{q(3), q(-1), q(1)});
        const Float z(Real(0.25), Real(-0.5));
        const Float expect = (Float(1) + Float(2) * z) / (Float(3) - z + z * z);
        CHECK(abs(f.evaluate(z) - expect) < Real(1e-70));
    }
}

TEST_CASE("combine") {
    PrecisionScope scope(256);
    const auto f = rational_series(P{q(1)}, P{q(1), q(0), q(-1)});
    const auto g = log_shift_series(q(3));
    SUBCASE("f + 0 and 2f") {
        const auto zero = polynomial_series({});
        const auto sum = f + zero;
        const auto twice = q(2) * f;
        for (std::size_t k = 0; k < 20; ++k) {
            CHECK(sum.coeff(k) == f.coeff(k));
            CHECK(twice.coeff(k) == q(2) * f.coeff(k));
        }
    }
    SUBCASE("linearity on random weights") {
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> w(-6, 6);
        for (int trial = 0; trial < 20; ++trial) {
            const Exact alpha = q(w(rng), 1 + trial % 3);
            const Exact beta(Rational(w(rng)), Rational(w(rng)));
            const auto c = combine({{alpha, f}, {beta, g}});
            for (std::size_t k = 0; k < 15; ++k) CHECK(c.coeff(k) == alpha * f.coeff(k) + beta * g.coeff(k));
            CHECK(c.opaque() == g.opaque() * beta);
        }
    }
    SUBCASE("cancelling poles disappear") {
        const auto sys = catalog("5.3-h");
        const auto d = sys[0] - sys[1];
        for (std::size_t k = 0; k < 20; ++k) CHECK(d.coeff(k) == sys[0].coeff(k) - sys[1].coeff(k));
        REQUIRE(d.analytics());
        CHECK(d.analytics()->pole_order({1, 0}) == 0);
        CHECK(d.analytics()->pole_order({2, 0}) == 1);
        CHECK(d.analytics()->radius(1) == doctest::Approx(4.0));
    }
    SUBCASE("generic series merge poles conservatively") {
        auto plain = [](const PowerSeries& s) {
            return PowerSeries([s](std::size_t k, const std::vector<Exact>&) { return s.coeff(k); }, "copy");
        };
        const auto c = combine({{q(1), plain(f)}, {q(1), f}});
        CHECK_FALSE(c.analytics());
        for (std::size_t k = 0; k < 10; ++k) CHECK(c.coeff(k) == q(2) * f.coeff(k));
    }
}

TEST_CASE("catalog metadata agrees with the known radii") {
    PrecisionScope scope(256);
    struct Row {
        const char* name;
        std::size_t component;
        std::size_t m;
        double radius;
    };
    const Row table[] = {
        {"5.1-fg", 0, 1, 1.0},   {"5.1-fg", 0, 2, inf},   {"5.1-fg", 1, 1, 1.0},   {"5.1-fg", 1, 2, inf},
        {"5.1-fh", 1, 1, inf},   {"5.1-fw", 1, 1, 2.0},   {"5.1-fw", 1, 2, inf},   {"5.2-f1f2", 0, 1, 2.0},
        {"5.2-f1f2", 1, 0, 3.0}, {"5.2-f1f2", 1, 1, inf}, {"5.2-g", 0, 1, 3.0},    {"5.2-g", 0, 2, 3.0},
        {"5.2-g", 1, 1, 10.0},   {"5.2-g", 1, 2, 10.0},   {"5.3-h", 1, 1, 3.0},    {"5.3-h", 1, 2, 3.0},
        {"5.3-h", 0, 2, 3.0},    {"5.3-hhat", 0, 1, 4.0}, {"5.3-hhat", 0, 2, 4.0}, {"5.3-hhat", 1, 2, 3.0},
    };
    for (const auto& row : table) {
        CAPTURE(row.name);
        CAPTURE(row.component);
        CAPTURE(row.m);
        const auto sys = catalog(row.name, std::string(row.name) == "5.1-fw" ? std::map<std::string, std::string>{{"p", "2"}}
                                                                            : std::map<std::string, std::string>{});
        REQUIRE(sys.size() == 2);
        const auto& a = sys[row.component].analytics();
        REQUIRE(a);
        if (std::isinf(row.radius))
            CHECK(std::isinf(a->radius(row.m)));
        else
            CHECK(a->radius(row.m) == doctest::Approx(row.radius));
        for (std::size_t m = 1; m < 5; ++m) CHECK(a->radius(m) >= a->radius(m - 1));
    }

    const auto fw = catalog("5.1-fw", {{"p", "2"}});
    const auto& poles = fw[1].analytics()->poles;
    CHECK(poles.size() == 2);
    CHECK(fw[1].analytics()->pole_order({-1, 0}) == 1);
    CHECK(fw[1].analytics()->pole_order({2, 0}) == 1);
}

TEST_CASE("catalog: components") {
    PrecisionScope scope(256);
    const auto fw = catalog("5.1-fw", {{"p", "3"}});
    // 1/(1+z) + 1/(1-z/3): (-1)^k + 3^-k
    Rational third(1);
    for (std::size_t k = 0; k < 12; ++k) {
        CHECK(fw[1].coeff(k) == Exact(Rational(k % 2 ? -1 : 1) + third));
        third /= 3;
    }
    const auto g = catalog("5.2-g");
    CHECK(g[0].coeff(0) == q(1));
    CHECK(g[0].coeff(2) == q(1) - q(1, 18));
    CHECK(g[1].coeff(1) == q(1, 4) - q(1, 10));
    CHECK(g[1].opaque() == OpaqueConstant::log_of(q(10)));

    const auto hhat = catalog("5.3-hhat");
    // h1 - h2 = 1/(2-z) - log(4-z)
    CHECK(hhat[0].coeff(0) == q(1, 2));
    CHECK(hhat[0].opaque() == OpaqueConstant::log_of(q(4), q(-1)));
    CHECK(hhat[0].coeff(3) == q(1, 16) + q(1, 3 * 64));

    CHECK_THROWS_AS(catalog("6.1-nothing"), SeriesError);
    CHECK_THROWS_AS(catalog("5.1-fw"), SeriesError);
    CHECK_THROWS_AS(catalog("5.1-fw", {{"p", "1"}}), SeriesError);
    CHECK_THROWS_AS(catalog("5.1-fw", {{"p", "two"}}), SeriesError);
    CHECK_THROWS_AS(catalog("5.1-fg", {{"p", "2"}}), SeriesError);
    CHECK(catalog_names().size() == 7);
}

TEST_CASE("closed forms agree with truncated series") {
    PrecisionScope scope(256);
    const auto sys = catalog("5.3-h");
    const Float z(Real(0.3), Real(0.2));
    for (const auto& f : sys.components) {
        Float sum(0);
        Float zk(1);
        for (std::size_t k = 0; k < 400; ++k) {
            sum += f.coeff_float(k) * zk;
            zk *= z;
        }
        CHECK(abs(sum - f.evaluate(z)) < Real(1e-60));
    }
}

TEST_CASE("memoized coefficients are safe to read concurrently") {
    PrecisionScope scope(256);
    const auto f = catalog("5.3-h")[0];
    std::vector<std::vector<Exact>> seen(4);
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < seen.size(); ++t)
        workers.emplace_back([&, t] {
            for (std::size_t k = 0; k < 60; ++k) seen[t].push_back(f.coeff(59 - k));
        });
    for (auto& w : workers) w.join();
    for (const auto& s : seen) CHECK(s == seen.front());
}

TEST_CASE("series-spec documents") {
    PrecisionScope scope(256);
    SUBCASE("rational") {
        const auto s = parse_series_spec(R"({"kind":"rational","num":["1"],"den":["1","-1"]})");
        REQUIRE(s.size() == 1);
        CHECK(s[0].coeff(9) == q(1));
    }
    SUBCASE("logshift with complex argument") {
        const auto s = parse_series_spec(R"({"kind":"logshift","a":{"re":"0","im":"2"}})");
        CHECK(s[0].coeff(1) == Exact(1) / Exact(Rational(0), Rational(-2)));
    }
    SUBCASE("coeffs") {
        const auto s = parse_series_spec(R"({"kind":"coeffs","values":["1","0","1/2", 3, 0.25]})");
        CHECK(s[0].coeff(2) == q(1, 2));
        CHECK(s[0].coeff(3) == q(3));
        CHECK(s[0].coeff(4) == q(1, 4));
        CHECK(s[0].coeff(5) == q(0));
    }
    SUBCASE("sum with weights") {
        const auto s = parse_series_spec(
            R"({"kind":"sum","terms":[{"kind":"rational","num":["1"],"den":["1","-1"]},
                                       {"weight":"-1/2","series":{"kind":"logshift","a":"3"}}]})");
        CHECK(s[0].coeff(1) == q(1) + q(1, 6));
    }
    SUBCASE("catalog") {
        const auto s = parse_series_spec(R"({"kind":"catalog","name":"5.1-fw","params":{"p":"2"}})");
        CHECK(s.size() == 2);
        CHECK(s.name == "5.1-fw");
    }
    SUBCASE("explicit system") {
        const auto s = parse_series_spec(
            R"({"kind":"system","components":[{"kind":"logshift","a":"3"},
                                               {"kind":"catalog","name":"5.2-g","component":2}]})");
        CHECK(s.size() == 2);
        CHECK(s[1].coeff(1) == q(1, 4) - q(1, 10));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(parse_series_spec("{not json"), SeriesError);
        CHECK_THROWS_AS(parse_series_spec(R"({"kind":"nope"})"), SeriesError);
        CHECK_THROWS_AS(parse_series_spec(R"({"kind":"rational","num":["1"]})"), SeriesError);
        CHECK_THROWS_AS(parse_series_spec(R"({"kind":"rational","num":["x"],"den":["1"]})"), SeriesError);
        CHECK_THROWS_AS(parse_series_spec(R"({"kind":"rational","num":["1"],"den":["0","1"]})"), SeriesError);
        CHECK_THROWS_AS(parse_series_spec(R"({"kind":"catalog","name":"5.1-fw"})"), SeriesError);
        CHECK_THROWS_AS(parse_series_spec(R"({"kind":"sum","terms":[{"kind":"catalog","name":"5.1-fg"}]})"), SeriesError);
    }
}
