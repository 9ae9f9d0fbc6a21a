#include "compose_approx/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "compose_approx/errors.hpp"
#include "compose_approx/numeric.hpp"

namespace compose_approx {

namespace {

void check_exponent(double e, const char* name, bool base) {
    if (!std::isfinite(e) || e < 0.0 || (base && e >= 1.0)) {
        throw ArgumentError(std::string("weight exponent ") + name + "=" + format_roundtrip(e) +
                            (base ? " must lie in [0, 1)" : " must be nonnegative"));
    }
}

}  // namespace

std::pair<double, double> refine_local_max(const ScalarFn& F, double a, double b, double c, double fa, double fb,
                                           double fc, double rel_tol, int max_iterations) {
    constexpr double kGolden = 0.3819660112501051;
    double best = fb;
    for (int it = 0; it < max_iterations; ++it) {
        if (c - a <= 4e-16 * std::max(1.0, std::abs(b))) break;
        const double num = (b - a) * (b - a) * (fb - fc) - (b - c) * (b - c) * (fb - fa);
        const double den = (b - a) * (fb - fc) - (b - c) * (fb - fa);
        double v = den != 0.0 ? b - 0.5 * num / den : b;
        bool parabolic = true;
        const double min_step = 1e-15 * std::max(1.0, std::abs(b));
        if (!(v > a && v < c) || std::abs(v - b) < min_step) {
            parabolic = false;
            v = (b - a > c - b) ? b - kGolden * (b - a) : b + kGolden * (c - b);
        }
        const double fv = F(v);
        if (fv >= fb) {
            if (v < b) {
                c = b;
                fc = fb;
            } else {
                a = b;
                fa = fb;
            }
            b = v;
            fb = fv;
        } else if (v < b) {
            a = v;
            fa = fv;
        } else {
            c = v;
            fc = fv;
        }
        const double gain = fb - best;
        best = fb;
        if (parabolic && gain <= rel_tol * std::abs(best)) break;
    }
    return {b, fb};
}

JacobiWeight::JacobiWeight(double gamma, double delta) : gamma_(gamma), delta_(delta) {
    check_exponent(gamma, "gamma", true);
    check_exponent(delta, "delta", true);
}

JacobiWeight JacobiWeight::general(double gamma, double delta) {
    check_exponent(gamma, "gamma", false);
    check_exponent(delta, "delta", false);
    return JacobiWeight(gamma, delta, Unchecked{});
}

JacobiWeight JacobiWeight::power(double c) const { return general(c * gamma_, c * delta_); }

JacobiWeight JacobiWeight::root(int r) const {
    if (r < 1) throw ArgumentError("root order must be positive");
    return power(1.0 / r);
}

double JacobiWeight::operator()(double x) const { return weight_eval(*this, x); }

double weight_eval(const JacobiWeight& w, double x) {
    if (!(x >= -1.0 && x <= 1.0)) throw ArgumentError("weight evaluated outside [-1,1] at x=" + format_roundtrip(x));
    return std::pow(1.0 - x, w.gamma()) * std::pow(1.0 + x, w.delta());
}

double phi_eval(double x) {
    if (!(x >= -1.0 && x <= 1.0)) throw ArgumentError("phi evaluated outside [-1,1] at x=" + format_roundtrip(x));
    return std::sqrt((1.0 - x) * (1.0 + x));
}

std::vector<double> chebyshev_sample_points(int n, double endpoint_exclusion) {
    if (n < 3) throw ArgumentError("sampling grid needs at least 3 points");
    std::vector<double> x(static_cast<std::size_t>(n));
    const double lo = -1.0 + endpoint_exclusion, hi = 1.0 - endpoint_exclusion;
    for (int i = 0; i < n; ++i) {
        const double t = -std::cos(std::numbers::pi * i / (n - 1));
        x[static_cast<std::size_t>(i)] = std::clamp(t, lo, hi);
    }
    return x;
}

NormReport weighted_sup_norm(const ScalarFn& fn, const JacobiWeight& w, int phi_power, const GridConfig& grid) {
    if (phi_power < 0) throw ArgumentError("phi power must be nonnegative");
    auto weighted = [&](double x) {
        const double v = fn(x);
        if (!std::isfinite(v)) {
            throw EvaluationError("non-finite sample " + format_roundtrip(v) + " at x=" + format_roundtrip(x));
        }
        double scale = weight_eval(w, x);
        if (phi_power > 0) scale *= int_pow(phi_eval(x), phi_power);
        return std::abs(v) * scale;
    };

    const auto xs = chebyshev_sample_points(grid.points, grid.endpoint_exclusion);
    std::vector<double> F(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) F[i] = weighted(xs[i]);

    NormReport report;
    report.grid_size = grid.points;
    const auto top = std::max_element(F.begin(), F.end());
    report.value = *top;
    report.argmax = xs[static_cast<std::size_t>(top - F.begin())];
    if (report.value == 0.0) return report;

    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        if (F[i] < F[i - 1] || F[i] < F[i + 1] || F[i] < 0.5 * report.value) continue;
        if (xs[i - 1] == xs[i] || xs[i] == xs[i + 1]) continue;
        const auto [x, v] = refine_local_max(weighted, xs[i - 1], xs[i], xs[i + 1], F[i - 1], F[i], F[i + 1], grid.rel_tol,
                                              grid.max_refine_iterations);
        report.refined = true;
        if (v > report.value) {
            report.value = v;
            report.argmax = x;
        }
    }
    return report;
}

ScalarFn derivative_function(const ExprAst& f, int r) {
    if (r < 0) throw ArgumentError("derivative order must be nonnegative");
    if (r == 0) return [f](double x) { return eval_scalar(f, x); };
    return [f, r](double x) { return derivative_at(f, x, r); };
}

SobolevParts sobolev_norm_parts(const ExprAst& f, int r, const JacobiWeight& w, const GridConfig& grid) {
    if (r < 1) throw ArgumentError("Sobolev order must be positive");
    if (f.arity() != 1) throw ArgumentError("weighted Sobolev norm needs a univariate function");
    return {weighted_sup_norm(derivative_function(f, 0), w, 0, grid),
            weighted_sup_norm(derivative_function(f, r), w, r, grid)};
}

double sobolev_norm(const ExprAst& f, int r, const JacobiWeight& w, const GridConfig& grid) {
    return sobolev_norm_parts(f, r, w, grid).total();
}

double multivariate_sobolev_norm(const ExprAst& f, int r, std::span<const Interval> box, const GridConfig& grid) {
    const int n = f.arity();
    if (r < 1) throw ArgumentError("Sobolev order must be positive");
    if (static_cast<std::size_t>(n) != box.size()) {
        throw ArgumentError("box has " + std::to_string(box.size()) + " sides for a function of " + std::to_string(n) +
                            " variables");
    }
    if (n < 1) throw ArgumentError("multivariate norm needs at least one variable");
    if (n > 4) throw ResourceLimitError("tensor sampling supports at most 4 variables, got " + std::to_string(n));
    for (const auto& side : box)
        if (!(side.lo <= side.hi)) throw ArgumentError("box side has lo > hi");

    const int per_dim = std::max(3, static_cast<int>(std::floor(std::pow(grid.tensor_budget, 1.0 / n) + 1e-9)));
    std::vector<std::vector<double>> axes;
    for (const auto& side : box) {
        std::vector<double> axis(static_cast<std::size_t>(per_dim));
        for (int i = 0; i < per_dim; ++i) {
            const double t = -std::cos(std::numbers::pi * i / (per_dim - 1));
            axis[static_cast<std::size_t>(i)] = 0.5 * (side.lo + side.hi) + 0.5 * (side.hi - side.lo) * t;
        }
        axis.front() = side.lo;
        axis.back() = side.hi;
        axes.push_back(std::move(axis));
    }

    std::vector<double> sup;
    std::vector<int> pick(static_cast<std::size_t>(n), 0);
    std::vector<double> point(static_cast<std::size_t>(n));
    while (true) {
        for (int j = 0; j < n; ++j) point[static_cast<std::size_t>(j)] = axes[static_cast<std::size_t>(j)][static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])];
        const auto jet = eval_jetn(f, point, r);
        if (sup.empty()) sup.assign(static_cast<std::size_t>(jet.basis().size()), 0.0);
        for (int i = 0; i < jet.basis().size(); ++i) {
            const double v = std::abs(jet.basis().factorial_weight(i) * jet.coeffs()[i]);
            if (!std::isfinite(v)) throw EvaluationError("non-finite partial derivative in multivariate norm");
            sup[static_cast<std::size_t>(i)] = std::max(sup[static_cast<std::size_t>(i)], v);
        }
        int j = n - 1;
        while (j >= 0 && ++pick[static_cast<std::size_t>(j)] == per_dim) pick[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
    }
    KahanSum total;
    for (double s : sup) total.add(s);
    return total.value();
}

double beta_function(double a, double b) { return std::beta(a, b); }

double lemma_constant(int k, const JacobiWeight& w) {
    if (k < 1) throw ArgumentError("lemma constant needs k >= 1");
    if (!w.is_base()) throw ArgumentError("lemma constant needs weight exponents in [0, 1)");
    const double kd = k;
    double k_pow_k_over_fact = 1.0;  // k^k / k!
    for (int m = 1; m <= k; ++m) k_pow_k_over_fact *= kd / m;
    const double kk1 = std::pow(kd, kd + 1.0);
    const double g = w.gamma(), d = w.delta();
    const double candidates[] = {
        std::pow(2.0, g + kd) * kk1 / (1.0 - g),
        std::pow(2.0, d + kd) * kk1 / (1.0 - d),
        k_pow_k_over_fact * std::pow(2.0, 1.5 * kd + g) * beta_function(1.0 - g, 0.5),
        k_pow_k_over_fact * std::pow(2.0, 1.5 * kd + d) * beta_function(1.0 - d, 0.5),
    };
    return *std::max_element(std::begin(candidates), std::end(candidates));
}

double chained_lemma_constant(int r, int k, const JacobiWeight& w) {
    if (!(k > 0 && k < r)) throw ArgumentError("chained lemma constant needs 0 < k < r");
    // ||D_k|| <= a ||f u|| + b ||D_j||, unfolded one order at a time
    double a = 0.0, b = 1.0;
    for (int j = k; j < r; ++j) {
        const double c = lemma_constant(j, w);
        a += b * c;
        b *= c;
    }
    return std::max(a, b);
}

}  // namespace compose_approx
