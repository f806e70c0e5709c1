#include "doctest.h"

#include "rowpade/gcd.hpp"
#include "rowpade/nullspace.hpp"
#include "rowpade/roots.hpp"

#include <random>

using namespace rowpade;

namespace {

Exact q(long num, long den = 1) { return Exact(Rational(num) / Rational(den)); }

Matrix<Exact> exact_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    Matrix<Exact> m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (auto r : rows) {
        Eigen::Index j = 0;
        for (long x : r) m(i, j++) = q(x);
        ++i;
    }
    return m;
}

bool annihilates(const Matrix<Exact>& m, const Vector<Exact>& v) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Exact acc(0);
        for (Eigen::Index j = 0; j < m.cols(); ++j) acc += m(i, j) * v(j);
        if (!acc.is_zero()) return false;
    }
    return true;
}

Matrix<Float> to_float(const Matrix<Exact>& m) {
    Matrix<Float> f(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) f(i, j) = rowpade::to_float(m(i, j));
    return f;
}

}  // namespace

TEST_CASE("nullspace_vector: exact examples") {
    SUBCASE("single equation forces the ratio") {
        auto v = nullspace_vector(exact_matrix({{1, -1}})).vector;
        CHECK(v(0) == q(1));
        CHECK(v(1) == q(1));
    }
    SUBCASE("zero matrix picks the highest free column") {
        auto v = nullspace_vector(exact_matrix({{0, 0, 0}, {0, 0, 0}})).vector;
        CHECK(v(0) == q(0));
        CHECK(v(1) == q(0));
        CHECK(v(2) == q(1));
    }
    SUBCASE("two equations, three unknowns") {
        auto m = exact_matrix({{1, 1, 0}, {0, 1, 1}});
        auto v = nullspace_vector(m).vector;
        CHECK(annihilates(m, v));
        // proportional to (1, -1, 1)
        CHECK(v(0) * q(-1) == v(1));
        CHECK(v(2) == v(0));
    }
    SUBCASE("shape errors") {
        CHECK_THROWS_AS(nullspace_vector(exact_matrix({{1, 2}, {3, 4}})), std::invalid_argument);
    }
}

TEST_CASE("nullspace_vector: float mode") {
    PrecisionScope scope(256);
    SUBCASE("zero matrix") {
        auto r = nullspace_vector(to_float(exact_matrix({{0, 0, 0}, {0, 0, 0}})));
        CHECK(r.vector(2) == Float(1));
        CHECK(r.vector(0).is_zero());
    }
    SUBCASE("matches the exact direction") {
        auto m = exact_matrix({{1, 1, 0}, {0, 1, 1}});
        auto r = nullspace_vector(to_float(m));
        CHECK(r.residual < Real(1e-70));
        Real len(0);
        for (Eigen::Index i = 0; i < 3; ++i) len += norm(r.vector(i));
        CHECK(mp::abs(len - 1) < Real(1e-70));
        CHECK(abs(r.vector(0) + r.vector(1)) < Real(1e-70));
        CHECK(abs(r.vector(0) - r.vector(2)) < Real(1e-70));
    }
    SUBCASE("complex entries") {
        Matrix<Float> m(1, 2);
        m(0, 0) = Float(Real(1), Real(2));
        m(0, 1) = Float(Real(3), Real(-1));
        auto r = nullspace_vector(m);
        CHECK(r.residual < Real(1e-70));
    }
}

TEST_CASE("nullspace_vector: property M v == 0 exactly on random rank-deficient systems") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> dim(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        const int r = dim(rng);
        Matrix<Exact> m(r, r + 1);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j <= r; ++j) m(i, j) = Exact(Rational(coef(rng)), Rational(trial % 3 == 0 ? coef(rng) : 0));
        if (r > 1 && trial % 4 == 0) m.row(r - 1) = m.row(0);  // force deficiency
        auto v = nullspace_vector(m).vector;
        bool nonzero = false;
        for (Eigen::Index i = 0; i < v.size(); ++i) nonzero = nonzero || !v(i).is_zero();
        CHECK(nonzero);
        CHECK(annihilates(m, v));
        // determinism
        CHECK(nullspace_vector(m).vector == v);
        for (const auto& b : nullspace_basis(m)) CHECK(annihilates(m, b));
    }
}

TEST_CASE("roots: examples") {
    PrecisionScope scope(256);
    Context ctx;
    SUBCASE("z^2 - 1") {
        auto set = roots(Polynomial<Exact>{q(-1), q(0), q(1)}, ctx);
        REQUIRE(set.roots.size() == 2);
        std::vector<double> re;
        for (const auto& r : set.roots) {
            CHECK(r.multiplicity == 1);
            re.push_back(static_cast<double>(r.value.real()));
            CHECK(mp::abs(r.value.imag()) < Real(1e-50));
        }
        std::sort(re.begin(), re.end());
        CHECK(re[0] == doctest::Approx(-1.0));
        CHECK(re[1] == doctest::Approx(1.0));
    }
    SUBCASE("z^2 - 28/31 against a direct square root") {
        auto set = roots(Polynomial<Exact>{q(-28, 31), q(0), q(1)}, ctx);
        const Real oracle = mp::sqrt(to_real(Rational(28) / Rational(31)));
        REQUIRE(set.roots.size() == 2);
        for (const auto& r : set.roots) CHECK(mp::abs(mp::abs(r.value.real()) - oracle) < Real(1e-60));
        CHECK(static_cast<double>(oracle) == doctest::Approx(0.95038).epsilon(1e-5));
    }
    SUBCASE("double root clusters") {
        auto set = roots(Polynomial<Exact>{q(1), q(-2), q(1)}, ctx);
        REQUIRE(set.roots.size() == 1);
        CHECK(set.roots[0].multiplicity == 2);
        CHECK(abs(set.roots[0].value - Float(1)) < Real(1e-25));
    }
    SUBCASE("root at the origin is exact") {
        auto set = roots(Polynomial<Exact>{q(0), q(0), q(-1), q(1)}, ctx);
        CHECK(set.total_multiplicity() == 3);
        CHECK(set.roots[0].value.is_zero());
        CHECK(set.roots[0].multiplicity == 2);
    }
    SUBCASE("degree zero has no roots") {
        CHECK_THROWS_WITH(roots(Polynomial<Exact>{q(3)}, ctx), "no roots");
    }
}

TEST_CASE("roots: rebuild round trip on random polynomials") {
    PrecisionScope scope(256);
    Context ctx;
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int trial = 0; trial < 60; ++trial) {
        const int deg = 1 + trial % 6;
        std::vector<Exact> c;
        for (int k = 0; k < deg; ++k) c.push_back(Exact(Rational(coef(rng)), Rational(coef(rng))));
        c.push_back(Exact(Rational(1 + trial % 4)));
        Polynomial<Exact> p(c);
        auto set = roots(p, ctx);
        CHECK(set.total_multiplicity() == static_cast<std::size_t>(deg));
        auto rebuilt = Polynomial<Float>::from_roots(set.expanded());
        auto target = monic(rowpade::to_float(p));
        const Real bound = 10 * ctx.tolerance() * std::max<Real>(Real(1), coefficient_scale(target));
        for (int k = 0; k <= deg; ++k) CHECK(abs(rebuilt[k] - target[k]) <= bound);
    }
}

TEST_CASE("gcd_reduce: exact examples") {
    using P = Polynomial<Exact>;
    SUBCASE("shared linear factor") {
        auto r = gcd_reduce(P{q(-1), q(0), q(1)}, P{q(-1), q(1)});
        CHECK(r.gcd == P{q(-1), q(1)});
        CHECK(r.quotients[0] == P{q(1), q(1)});
        CHECK(r.quotients[1] == P{q(1)});
    }
    SUBCASE("disjoint roots") {
        auto r = gcd_reduce(P{q(1), q(0), q(1)}, P{q(-1), q(0), q(1)});
        CHECK(r.gcd == P{q(1)});
    }
    SUBCASE("half") {
        const P a = P{q(-1), q(1)} * P{q(-1, 2), q(1)};
        const P b = P{q(-1, 2), q(1)} * P{q(3), q(1)};
        auto r = gcd_reduce(a, b);
        CHECK(r.gcd == P{q(-1, 2), q(1)});
        CHECK(r.gcd * r.quotients[0] == a);
        CHECK(r.gcd * r.quotients[1] == b);
    }
    SUBCASE("zero operand") {
        auto r = gcd_reduce(P{q(2), q(4)}, P{});
        CHECK(r.gcd == P{q(1, 2), q(1)});
        CHECK_THROWS(gcd_reduce(P{}, P{}));
    }
}

TEST_CASE("gcd_reduce: exactness property") {
    using P = Polynomial<Exact>;
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> root(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Exact> ra, rb;
        for (int k = 0; k < 1 + trial % 4; ++k) ra.push_back(q(root(rng), 1 + trial % 2));
        for (int k = 0; k < 1 + trial % 3; ++k) rb.push_back(q(root(rng), 1 + trial % 2));
        const P a = P::from_roots(ra) * q(3);
        const P b = P::from_roots(rb) * q(-2, 5);
        auto r = gcd_reduce(a, b);
        CHECK(r.gcd * r.quotients[0] == a);
        CHECK(r.gcd * r.quotients[1] == b);
        CHECK(gcd({r.quotients[0], r.quotients[1]}).degree() == 0);
    }
}

TEST_CASE("gcd_reduce: float mode") {
    PrecisionScope scope(256);
    Context ctx;
    using P = Polynomial<Exact>;
    const P a = P{q(-1), q(1)} * P{q(-1, 2), q(1)};
    const P b = P{q(-1, 2), q(1)} * P{q(3), q(1)};
    auto r = gcd_reduce(rowpade::to_float(a), rowpade::to_float(b), ctx);
    REQUIRE(r.gcd.degree() == 1);
    CHECK(abs(r.gcd[0] + Float(Real(0.5))) < Real(1e-60));
    CHECK(r.quotients[0].degree() == 1);

    SUBCASE("near-common roots are flagged") {
        const Polynomial<Float> fa{Float(-1), Float(1)};
        const Polynomial<Float> fb{Float(-(1 + Real(1e-10))), Float(1)};
        CHECK_THROWS_AS(gcd_reduce(fa, fb, ctx), UncertainCancellation);
    }
}

TEST_CASE("rational literals") {
    CHECK(parse_rational("-28/31") == Rational(-28) / Rational(31));
    CHECK(parse_rational("0.25") == Rational(1) / Rational(4));
    CHECK(parse_rational("007") == Rational(7));
    CHECK(parse_rational("-3e-2") == Rational(-3) / Rational(100));
    CHECK(parse_rational(" 12.5E1 ") == Rational(125));
    CHECK(to_string(parse_rational("-28/31")) == "-28/31");
    CHECK(to_string(Exact(Rational(1, 2), Rational(-3))) == "1/2-3i");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5x"), std::invalid_argument);
}
