#include <cmath>
#include <numbers>

#include "compose_approx/weighted.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace compose_approx;

namespace {

double brute_weighted(const std::function<double(double)>& f, double gamma, double delta, int p, int points = 1'000'000) {
    return oracle::dense_grid_max(
        [&](double x) {
            return std::abs(f(x)) * std::pow(1 - x, gamma) * std::pow(1 + x, delta) * std::pow(std::sqrt(1 - x * x), p);
        },
        -1.0, 1.0, points);
}

}  // namespace

TEST_CASE("weights and phi") {
    CHECK(weight_eval(JacobiWeight(0.5, 0.5), 0.0) == 1.0);
    CHECK(weight_eval(JacobiWeight::unit(), 0.3) == 1.0);
    CHECK(weight_eval(JacobiWeight::unit(), -1.0) == 1.0);
    CHECK(weight_eval(JacobiWeight(0.5, 0.0), 1.0) == 0.0);
    CHECK(weight_eval(JacobiWeight(0.0, 0.25), -1.0) == 0.0);
    CHECK(phi_eval(0.6) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(phi_eval(1.0) == 0.0);

    CHECK_THROWS_AS(weight_eval(JacobiWeight::unit(), 1.5), ArgumentError);
    CHECK_THROWS_AS(phi_eval(-1.0001), ArgumentError);
    CHECK_THROWS_AS(JacobiWeight(1.0, 0.0), ArgumentError);
    CHECK_THROWS_AS(JacobiWeight(0.0, -0.1), ArgumentError);
    CHECK_NOTHROW(JacobiWeight::general(2.5, 1.0));
    CHECK_FALSE(JacobiWeight::general(2.5, 1.0).is_base());
}

TEST_CASE("power and root of a weight") {
    const JacobiWeight w(0.75, 0.25);
    const auto cube = w.power(3.0);
    CHECK(cube.gamma() == 2.25);
    CHECK(cube.delta() == 0.75);
    CHECK(w.root(3).gamma() == doctest::Approx(0.25));
    for (double x = -0.999; x < 1.0; x += 0.0371) {
        const double direct = std::pow(weight_eval(w, x), 3.0);
        CHECK(oracle::close_rel(weight_eval(cube, x), direct, 1e-14));
        const double root = std::pow(weight_eval(w, x), 0.5);
        CHECK(oracle::close_rel(weight_eval(w.power(0.5), x), root, 1e-14));
    }
}

TEST_CASE("sup norm examples") {
    const auto one = weighted_sup_norm([](double) { return 1.0; }, JacobiWeight::unit(), 0);
    CHECK(one.value == 1.0);
    CHECK(one.grid_size == 4097);

    const auto phi = weighted_sup_norm([](double) { return 1.0; }, JacobiWeight::unit(), 1);
    CHECK(phi.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(phi.argmax) < 1e-6);

    const auto half = weighted_sup_norm([](double x) { return x; }, JacobiWeight(0.5, 0.5), 0);
    CHECK(half.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(std::abs(half.argmax) - 1 / std::sqrt(2.0)) < 1e-5);
    CHECK(oracle::close_rel(half.value, brute_weighted([](double x) { return x; }, 0.5, 0.5, 0), 1e-6));

    const auto zero = weighted_sup_norm([](double) { return 0.0; }, JacobiWeight::unit(), 2);
    CHECK(zero.value == 0.0);

    CHECK_THROWS_AS(weighted_sup_norm([](double x) { return x > 0.9 ? std::nan("") : 1.0; }, JacobiWeight::unit(), 0),
                    EvaluationError);
    CHECK_THROWS_AS(weighted_sup_norm([](double) { return 1.0; }, JacobiWeight::unit(), -1), ArgumentError);
}

TEST_CASE("sup norm agrees with a dense uniform grid on random expressions") {
    oracle::ExprGenerator gen(101, {"x"});
    const double exps[] = {0.0, 0.25, 0.5, 0.75};
    std::uniform_int_distribution<int> pick(0, 3), power(0, 3);
    for (int i = 0; i < 20; ++i) {
        const auto src = gen.generate(3);
        const auto e = parse_univariate(src);
        const double g = exps[pick(gen.rng())], d = exps[pick(gen.rng())];
        const int p = power(gen.rng());
        const auto fn = [&](double x) { return eval_scalar(e, x); };
        const auto report = weighted_sup_norm(fn, JacobiWeight(g, d), p);
        const double brute = brute_weighted(fn, g, d, p);
        INFO(src, " gamma=", g, " delta=", d, " p=", p);
        CHECK(report.value >= 0.0);
        CHECK(std::abs(report.argmax) <= 1.0);
        CHECK(oracle::close_rel(report.value, brute, 1e-6, 1e-12));
    }
}

TEST_CASE("sup norm is monotone under domination") {
    oracle::ExprGenerator gen(7, {"x"});
    const GridConfig grid;
    for (int i = 0; i < 10; ++i) {
        const auto e = parse_univariate(gen.generate(3));
        const auto f = [&](double x) { return eval_scalar(e, x); };
        const auto bigger = [&](double x) { return 1.5 * std::abs(f(x)) + 0.1 * std::cos(3 * x) * std::cos(3 * x); };
        const JacobiWeight w(0.25, 0.5);
        CHECK(weighted_sup_norm(f, w, 1, grid).value <= weighted_sup_norm(bigger, w, 1, grid).value * (1 + grid.rel_tol));
    }
}

TEST_CASE("Sobolev norm") {
    CHECK(sobolev_norm(parse_univariate("1"), 3, JacobiWeight::unit()) == 1.0);
    CHECK(sobolev_norm(parse_univariate("x"), 1, JacobiWeight::unit()) == doctest::Approx(2.0).epsilon(1e-12));

    const double e_part = std::numbers::e;
    const double d_part = brute_weighted([](double x) { return std::exp(x); }, 0, 0, 2);
    CHECK(oracle::close_rel(sobolev_norm(parse_univariate("exp(x)"), 2, JacobiWeight::unit()), e_part + d_part, 1e-6));

    const auto parts = sobolev_norm_parts(parse_univariate("(1+x)^2.5"), 2, JacobiWeight(0.5, 0.5));
    const double d2 = brute_weighted([](double x) { return 3.75 * std::sqrt(1 + x); }, 0.5, 0.5, 2);
    CHECK(oracle::close_rel(parts.derivative.value, d2, 1e-6));

    CHECK_THROWS_AS(sobolev_norm(parse_univariate("x"), 0, JacobiWeight::unit()), ArgumentError);
    CHECK_THROWS_AS(sobolev_norm(parse_outer("y1*y2", 2), 1, JacobiWeight::unit()), ArgumentError);
}

TEST_CASE("multivariate Sobolev norm") {
    const Interval unit[] = {{-1, 1}, {-1, 1}};
    CHECK(multivariate_sobolev_norm(parse_outer("-3", 1), 2, std::span(unit, 1)) == 3.0);
    CHECK(multivariate_sobolev_norm(parse_outer("y1", 1), 1, std::span(unit, 1)) == 2.0);
    CHECK(multivariate_sobolev_norm(parse_outer("y1*y2", 2), 2, unit) == 4.0);

    const Interval box[] = {{0, 2}, {-1, 0.5}};
    // y1^2 + y2: sup 4.5, partials 2*y1 -> 4, 1, 2
    CHECK(multivariate_sobolev_norm(parse_outer("y1^2+y2", 2), 2, box) == doctest::Approx(4.5 + 4 + 1 + 2));

    CHECK_THROWS_AS(multivariate_sobolev_norm(parse_outer("y1*y2", 2), 2, std::span(unit, 1)), ArgumentError);
    const Interval five[] = {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}};
    CHECK_THROWS_AS(multivariate_sobolev_norm(parse_outer("y1+y2+y3+y4+y5", 5), 1, five), ResourceLimitError);
}

TEST_CASE("lemma constants") {
    CHECK(beta_function(1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(lemma_constant(1, JacobiWeight::unit()) == doctest::Approx(std::pow(2.0, 2.5)).epsilon(1e-14));
    for (int k = 1; k <= 5; ++k) {
        const JacobiWeight w(0.25, 0.75);
        CHECK(chained_lemma_constant(k + 1, k, w) == lemma_constant(k, w));
    }
    // two steps: a = C1 + C1 C2, b = C1 C2
    const JacobiWeight w(0.5, 0.0);
    const double c1 = lemma_constant(1, w), c2 = lemma_constant(2, w);
    CHECK(chained_lemma_constant(3, 1, w) == doctest::Approx(c1 + c1 * c2));
    CHECK_THROWS_AS(lemma_constant(0, w), ArgumentError);
    CHECK_THROWS_AS(chained_lemma_constant(2, 2, w), ArgumentError);
    CHECK_THROWS_AS(lemma_constant(1, JacobiWeight::general(1.5, 0)), ArgumentError);
}
