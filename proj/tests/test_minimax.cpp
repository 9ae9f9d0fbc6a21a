#include <chrono>
#include <cmath>

#include "compose_approx/minimax.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace compose_approx;

namespace {

double t3(double x) { return 4 * x * x * x - 3 * x; }

void check_equioscillation(const ApproxReport& rep, double rel) {
    REQUIRE(rep.extrema.size() >= static_cast<std::size_t>(rep.m + 2));
    for (std::size_t i = 0; i < rep.extrema.size(); ++i) {
        if (i > 0) {
            CHECK(rep.extrema[i] > rep.extrema[i - 1]);
            CHECK(rep.residuals[i] * rep.residuals[i - 1] < 0);
        }
        CHECK(std::abs(std::abs(rep.residuals[i]) - rep.error) <= rel * rep.error + rep.resolution);
    }
}

}  // namespace

TEST_CASE("Chebyshev polynomials") {
    const auto t = ChebPoly<double>::basis(3);
    for (double x = -1; x <= 1; x += 0.125) CHECK(t(x) == doctest::Approx(t3(x)).epsilon(1e-15));
    CHECK(ChebPoly<double>()(0.3) == 0.0);
    CHECK_THROWS_AS(ChebPoly<double>(Eigen::VectorXd()), ArgumentError);

    const auto c = cheb_interpolant(t3, 3);
    CHECK(std::abs(c.coeff(0)) < 1e-14);
    CHECK(std::abs(c.coeff(1)) < 1e-14);
    CHECK(std::abs(c.coeff(2)) < 1e-14);
    CHECK(std::abs(c.coeff(3) - 1) < 1e-14);

    const auto two = cheb_interpolant([](double) { return 2.0; }, 6);
    CHECK(two.coeff(0) == doctest::Approx(2.0).epsilon(1e-15));
    for (int k = 1; k <= 6; ++k) CHECK(std::abs(two.coeff(k)) < 1e-15);

    const auto e = cheb_interpolant([](double x) { return std::exp(x); }, 10);
    CHECK(oracle::dense_grid_max([&](double x) { return std::exp(x) - e(x); }, -1, 1, 100001) <= 1e-9);

    CHECK_THROWS_AS(cheb_interpolant([](double x) { return std::log(x); }, 4), EvaluationError);
}

TEST_CASE("exact best approximations") {
    const auto sq = weighted_remez([](double x) { return x * x; }, 1, JacobiWeight::unit());
    CHECK(sq.converged);
    CHECK(std::abs(sq.error - 0.5) <= 1e-8);
    CHECK(std::abs(sq.poly(0.3) - 0.5) <= 1e-8);
    REQUIRE(sq.extrema.size() == 3);
    CHECK(sq.extrema[0] == -1.0);
    CHECK(std::abs(sq.extrema[1]) < 1e-12);
    CHECK(sq.extrema[2] == 1.0);
    check_equioscillation(sq, 1e-8);

    const auto cheb = weighted_remez(t3, 2, JacobiWeight::unit());
    CHECK(cheb.converged);
    CHECK(std::abs(cheb.error - 1.0) <= 1e-8);
    CHECK(oracle::dense_grid_max([&](double x) { return cheb.poly(x); }, -1, 1, 10001) <= 1e-8);
    check_equioscillation(cheb, 1e-8);

    const auto poly = weighted_remez([](double x) { return x * x; }, 2, JacobiWeight::unit());
    CHECK(poly.polynomial);
    CHECK(poly.error <= 1e-13);
    CHECK(poly.iterations == 1);

    oracle::ExprGenerator gen(5, {"x"});
    std::uniform_real_distribution<double> coef(-2, 2);
    for (int m = 0; m <= 12; ++m) {
        Eigen::VectorXd c(m + 1);
        for (int k = 0; k <= m; ++k) c[k] = coef(gen.rng());
        const ChebPoly<double> p(c);
        const auto rep = weighted_remez([&](double x) { return p(x); }, m, JacobiWeight(0.5, 0.25));
        CHECK(rep.error <= 1e-12);
    }
}

TEST_CASE("equioscillation, monotonicity and the sandwich") {
    const std::vector<std::pair<const char*, JacobiWeight>> cases{
        {"exp(x)", JacobiWeight::unit()},
        {"sin(3*x)/(2+cos(x))", JacobiWeight(0.5, 0.5)},
        {"(1+x)^2.5", JacobiWeight(0.0, 0.5)},
        {"(1-x)^1.25", JacobiWeight(0.5, 0.5)},
        {"log(2+x)", JacobiWeight(0.25, 0.75)},
    };
    for (const auto& [src, w] : cases) {
        const auto e = parse_univariate(src);
        const auto fn = [&](double x) { return eval_scalar(e, x); };
        double prev = std::numeric_limits<double>::infinity();
        for (int m = 1; m <= 16; ++m) {
            const auto rep = weighted_remez(fn, m, w);
            INFO(std::string(src), " m=", m);
            CHECK(rep.levelled <= rep.error * (1 + 1e-12));
            CHECK(rep.error <= prev * (1 + 1e-10) + rep.resolution);
            if (rep.converged && rep.error > 1e-12) {
                CHECK(rep.error <= rep.levelled * (1 + 1e-10) + 1e-13);
                check_equioscillation(rep, 1e-8);
            }
            for (double x : rep.extrema) {
                if (w.gamma() > 0) CHECK(x < 1.0);
                if (w.delta() > 0) CHECK(x > -1.0);
            }
            prev = rep.error;
        }
    }
}

TEST_CASE("interpolation is never better than the best approximation") {
    for (const char* src : {"exp(x)", "1/(2+x)", "sin(5*x)", "(1+x)^3.5"}) {
        const auto e = parse_univariate(src);
        const auto fn = [&](double x) { return eval_scalar(e, x); };
        for (int m : {2, 5, 9}) {
            const auto p = cheb_interpolant(fn, m);
            const auto rep = weighted_remez(fn, m, JacobiWeight::unit());
            const double interp = oracle::dense_grid_max([&](double x) { return fn(x) - p(x); }, -1, 1, 20001);
            CHECK(interp >= rep.error * (1 - 1e-6) - 1e-12);
        }
    }
}

TEST_CASE("errors and high degree") {
    CHECK_THROWS_AS(weighted_remez([](double x) { return x; }, -1, JacobiWeight::unit()), ArgumentError);
    CHECK_THROWS_AS(weighted_remez([](double x) { return x; }, 10, JacobiWeight::unit(), RemezOptions{.grid_points = 16}),
                    ArgumentError);
    CHECK_THROWS_AS(weighted_remez([](double x) { return 1 / (x - 1); }, 3, JacobiWeight::unit()), EvaluationError);

    const auto e = parse_univariate("(1+x)^1.5");
    const auto rep = weighted_remez([&](double x) { return eval_scalar(e, x); }, 200, JacobiWeight::unit());
    CHECK(rep.error > 0);
    CHECK(rep.extrema.size() >= 202);
}

TEST_CASE("Favard right-hand side") {
    CHECK(favard_rhs(parse_univariate("3*x+1"), 2, 5, JacobiWeight::unit()) == 0.0);
    const double brute = oracle::dense_grid_max([](double x) { return std::exp(x) * std::sqrt(1 - x * x); }, -1, 1, 1'000'000);
    CHECK(oracle::close_rel(favard_rhs(parse_univariate("exp(x)"), 1, 10, JacobiWeight::unit()), brute / 10, 1e-6));
    const JacobiWeight w(0.25, 0.5);
    const double a = favard_rhs(parse_univariate("sin(2*x)"), 2, 7, w);
    const double b = favard_rhs(parse_univariate("-3*sin(2*x)"), 2, 7, w);
    CHECK(oracle::close_rel(b, 3 * a, 1e-12));
    CHECK_THROWS_AS(favard_rhs(parse_univariate("x"), 3, 2, w), ArgumentError);
}
