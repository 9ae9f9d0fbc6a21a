#include <cmath>
#include <random>

#include "compose_approx/faadibruno.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace compose_approx;

TEST_CASE("univariate chain rule and e^{sin x}") {
    const double f1[] = {0.0, 2.0};
    const double g1[] = {0.0, 3.0};
    CHECK(composite_derivative_1d(f1, g1, 1) == 6.0);

    // f = exp at g(0) = 0, g = sin at 0
    const std::vector<double> f_derivs(4, 1.0);
    const std::vector<double> g_derivs{0.0, 1.0, 0.0, -1.0};
    CHECK(composite_derivative_1d(std::span(f_derivs).first(3), std::span(g_derivs).first(3), 2) == 1.0);
    CHECK(composite_derivative_1d(f_derivs, g_derivs, 3) == 0.0);

    CHECK_THROWS_AS(composite_derivative_1d(f_derivs, std::span(g_derivs).first(3), 3), ArgumentError);
}

TEST_CASE("partition form and Bell form agree") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int r = 1; r <= 10; ++r) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> f(static_cast<std::size_t>(r + 1)), g(static_cast<std::size_t>(r + 1));
            for (auto& v : f) v = u(rng);
            for (auto& v : g) v = u(rng);
            const double a = composite_derivative_1d(f, g, r);
            const double b = composite_derivative_bell(f, g, r);
            CHECK(oracle::close_rel(a, b, 1e-12, 1e-12));
        }
    }
}

TEST_CASE("all-ones data gives Bell numbers") {
    for (int r = 1; r <= 12; ++r) {
        const std::vector<double> ones(static_cast<std::size_t>(r + 1), 1.0);
        const double bell = to_double(bell_number(r));
        CHECK(std::abs(composite_derivative_1d(ones, ones, r) - bell) <= 1e-10 * bell);
    }
}

TEST_CASE("multivariate formula") {
    PartialMap partials{{{0, 0}, 0.0}, {{1, 0}, 3.0}, {{0, 1}, 2.0}};
    const std::vector<std::vector<double>> g{{0.0, 1.0}, {0.0, 2.0}};
    CHECK(composite_derivative_nd(partials, g, 1) == 7.0);

    // f = y1 y2, g = (x, x^2) at x0 = 1: composite x^3, second derivative 6
    PartialMap fy{{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}, {{2, 0}, 0.0}, {{1, 1}, 1.0}, {{0, 2}, 0.0}};
    const std::vector<std::vector<double>> gx{{1.0, 1.0, 0.0}, {1.0, 2.0, 2.0}};
    CHECK(composite_derivative_nd(fy, gx, 2) == 6.0);

    PartialMap missing{{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}};
    CHECK_THROWS_WITH_AS(composite_derivative_nd(missing, gx, 2), doctest::Contains("(2,0)"), ArgumentError);
}

TEST_CASE("n = 1 reduces to the univariate formula bit for bit") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int r = 1; r <= 8; ++r) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> f(static_cast<std::size_t>(r + 1)), g(static_cast<std::size_t>(r + 1));
            for (auto& v : f) v = u(rng);
            for (auto& v : g) v = u(rng);
            PartialMap partials;
            for (int k = 0; k <= r; ++k) partials[{k}] = f[static_cast<std::size_t>(k)];
            const std::vector<std::vector<double>> gs{g};
            CHECK(composite_derivative_nd(partials, gs, r) == composite_derivative_1d(f, g, r));
        }
    }
}

TEST_CASE("composite_jet examples") {
    const auto id = composite_jet(parse_outer("y1", 1), std::vector{parse_univariate("x")}, 0.3, 3);
    CHECK(id == std::vector<double>{0.3, 1.0, 0.0, 0.0});

    const auto cube = composite_jet(parse_outer("y1*y2", 2), std::vector{parse_univariate("x"), parse_univariate("x^2")},
                                    1.0, 3);
    CHECK(cube == std::vector<double>{1.0, 3.0, 6.0, 6.0});

    const auto es = composite_jet(parse_outer("exp(y1)", 1), std::vector{parse_univariate("sin(x)")}, 0.0, 3);
    CHECK(es[0] == 1.0);
    CHECK(es[1] == 1.0);
    CHECK(es[2] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(es[3]) < 1e-15);

    CHECK_THROWS_AS(composite_jet(parse_outer("log(y1)", 1), std::vector{parse_univariate("x-2")}, 0.0, 2), DomainError);
    CHECK_THROWS_AS(composite_jet(parse_outer("y1", 1), std::vector{parse_univariate("x"), parse_univariate("x")}, 0.0, 2),
                    ArgumentError);
}

TEST_CASE("Faa di Bruno agrees with jet composition on random expressions") {
    int cases = 0;
    for (int n = 1; n <= 3; ++n) {
        oracle::ExprGenerator fgen(100 + static_cast<std::uint64_t>(n), outer_variable_names(n));
        oracle::ExprGenerator ggen(200 + static_cast<std::uint64_t>(n), {"x"});
        std::uniform_real_distribution<double> u(-0.9, 0.9);
        std::uniform_int_distribution<int> order(1, 6);
        for (int trial = 0; trial < 20; ++trial, ++cases) {
            const auto f = parse_outer(fgen.generate(3), n);
            std::vector<ExprAst> g;
            for (int j = 0; j < n; ++j) g.push_back(parse_univariate(ggen.generate(3)));
            const double x0 = u(fgen.rng());
            const int r = order(fgen.rng());
            const auto got = composite_jet(f, g, x0, r);
            const auto want = composite_jet_oracle(f, g, x0, r);
            for (int i = 0; i <= r; ++i) {
                const double a = got[static_cast<std::size_t>(i)], b = want[static_cast<std::size_t>(i)];
                const double scale = std::max(std::abs(a), std::abs(b));
                CHECK((scale < 1e-6 ? std::abs(a - b) <= 1e-12 : std::abs(a - b) <= 1e-9 * scale));
            }
        }
    }
    CHECK(cases >= 50);
}
