#pragma once

// Jacobi weights u(x) = (1-x)^gamma (1+x)^delta, the step weight
// phi(x) = sqrt(1-x^2), sampled weighted sup norms on [-1,1], the weighted
// and multivariate Sobolev-type norms, and the explicit derivative-estimate
// constants.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "compose_approx/expr.hpp"

namespace compose_approx {

class JacobiWeight {
public:
    /// Base weight; both exponents must lie in [0, 1).
    JacobiWeight(double gamma, double delta);

    /// Any nonnegative exponents (powers of a base weight).
    static JacobiWeight general(double gamma, double delta);
    static JacobiWeight unit() { return {0.0, 0.0}; }

    double gamma() const noexcept { return gamma_; }
    double delta() const noexcept { return delta_; }
    bool is_unit() const noexcept { return gamma_ == 0.0 && delta_ == 0.0; }
    /// Exponents in [0, 1), as the derivative estimates require.
    bool is_base() const noexcept { return gamma_ < 1.0 && delta_ < 1.0; }

    /// u^c, exponents (c gamma, c delta).
    JacobiWeight power(double c) const;
    /// u^(1/r).
    JacobiWeight root(int r) const;

    double operator()(double x) const;

    friend bool operator==(const JacobiWeight&, const JacobiWeight&) = default;

private:
    struct Unchecked {};
    JacobiWeight(double gamma, double delta, Unchecked) : gamma_(gamma), delta_(delta) {}

    double gamma_ = 0.0;
    double delta_ = 0.0;
};

/// Throws ArgumentError outside [-1, 1].
double weight_eval(const JacobiWeight& w, double x);
double phi_eval(double x);

struct GridConfig {
    int points = 4097;
    double rel_tol = 1e-10;
    double endpoint_exclusion = 1e-12;
    int max_refine_iterations = 100;
    /// Total tensor-grid evaluations for multivariate sup norms.
    int tensor_budget = 1 << 14;
};

struct NormReport {
    double value = 0.0;
    double argmax = 0.0;
    int grid_size = 0;
    bool refined = false;
};

using ScalarFn = std::function<double(double)>;

/// Chebyshev-spaced points -cos(pi i / (n-1)) pulled inside [-1+eps, 1-eps].
std::vector<double> chebyshev_sample_points(int n, double endpoint_exclusion);

/// sup over (-1,1) of |fn(x)| phi(x)^phi_power u(x) by dense sampling plus
/// parabolic refinement around local maxima.
NormReport weighted_sup_norm(const ScalarFn& fn, const JacobiWeight& w, int phi_power, const GridConfig& grid = {});

/// Maximize F on [a, c] from an interior sample b with F(b) >= F(a), F(c),
/// by safeguarded parabolic steps; returns (argmax, max).
std::pair<double, double> refine_local_max(const ScalarFn& F, double a, double b, double c, double fa, double fb,
                                           double fc, double rel_tol, int max_iterations);

/// x -> f^(r)(x) through jets.
ScalarFn derivative_function(const ExprAst& f, int r);

struct SobolevParts {
    NormReport function;    // ||f u||
    NormReport derivative;  // ||f^(r) phi^r u||
    double total() const { return function.value + derivative.value; }
};

SobolevParts sobolev_norm_parts(const ExprAst& f, int r, const JacobiWeight& w, const GridConfig& grid = {});
double sobolev_norm(const ExprAst& f, int r, const JacobiWeight& w, const GridConfig& grid = {});

struct Interval {
    double lo;
    double hi;
};

/// ||f||_inf + sum_{1 <= |l| <= r} ||D^l f||_inf over a box (tensor sampling).
double multivariate_sobolev_norm(const ExprAst& f, int r, std::span<const Interval> box, const GridConfig& grid = {});

double beta_function(double a, double b);

/// One-step constant C(k) of ||f^(k) phi^k u|| <= C(k) (||f u|| + ||f^(k+1) phi^(k+1) u||).
double lemma_constant(int k, const JacobiWeight& w);

/// Constant for ||f^(k) phi^k u|| <= C (||f u|| + ||f^(r) phi^r u||), 0 < k < r,
/// obtained by chaining the one-step bound from k up to r-1.
double chained_lemma_constant(int r, int k, const JacobiWeight& w);

}  // namespace compose_approx
