#pragma once

// Weighted best polynomial approximation on [-1,1]: Chebyshev-basis
// polynomials, interpolation at first-kind nodes, and a discretized Remez
// exchange for E_m(f)_u = inf_P ||(f - P) u||.

#include <Eigen/Core>
#include <vector>

#include "compose_approx/errors.hpp"
#include "compose_approx/weighted.hpp"

namespace compose_approx {

template <typename Scalar>
class ChebPoly {
public:
    using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    ChebPoly() : c_(Coeffs::Zero(1)) {}
    explicit ChebPoly(Coeffs c) : c_(std::move(c)) {
        if (c_.size() < 1) throw ArgumentError("Chebyshev polynomial needs at least one coefficient");
    }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const Coeffs& coeffs() const noexcept { return c_; }
    Scalar coeff(int k) const { return c_[k]; }

    /// Clenshaw recurrence.
    Scalar operator()(Scalar x) const {
        Scalar b1(0), b2(0);
        const Scalar two_x = Scalar(2) * x;
        for (int k = degree(); k >= 1; --k) {
            const Scalar b0 = c_[k] + two_x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        return c_[0] + x * b1 - b2;
    }

    /// T_k as a polynomial.
    static ChebPoly basis(int k) {
        Coeffs c = Coeffs::Zero(k + 1);
        c[k] = Scalar(1);
        return ChebPoly(std::move(c));
    }

private:
    Coeffs c_;
};

/// Interpolant at the m+1 first-kind nodes cos(pi (j + 1/2) / (m + 1)).
ChebPoly<double> cheb_interpolant(const ScalarFn& f, int m);

struct RemezOptions {
    int grid_points = 8193;
    double tol = 1e-10;
    int max_iterations = 60;
    /// Residual below this (relative to max |f u|) means f is already in P_m.
    double polynomial_tol = 1e-13;
    /// Gaps within this many ulps of max |f u| count as converged.
    double rounding_ulps = 100.0;
};

struct ApproxReport {
    int m = 0;
    double error = 0.0;      // max grid weighted residual (upper bound)
    double levelled = 0.0;   // |h| on the final reference (lower bound)
    ChebPoly<double> poly;
    std::vector<double> extrema;   // alternation points of the final residual
    std::vector<double> residuals; // weighted residual at those points
    /// Rounding level of the grid residual (rounding_ulps * eps * max |f u|);
    /// differences below it are not resolvable.
    double resolution = 0.0;
    int iterations = 0;
    bool converged = false;
    bool polynomial = false;  // f detected as an element of P_m
};

ApproxReport weighted_remez(const ScalarFn& f, int m, const JacobiWeight& w, const RemezOptions& opts = {});

/// ||f^(r) phi^r u|| / m^r.
double favard_rhs(const ExprAst& f, int r, int m, const JacobiWeight& w, const GridConfig& grid = {});

}  // namespace compose_approx
