#include "compose_approx/minimax.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "compose_approx/numeric.hpp"

namespace compose_approx {

ChebPoly<double> cheb_interpolant(const ScalarFn& f, int m) {
    if (m < 0) throw ArgumentError("degree must be nonnegative");
    const int n = m + 1;
    Eigen::VectorXd values(n);
    for (int j = 0; j < n; ++j) {
        const double x = std::cos(std::numbers::pi * (j + 0.5) / n);
        values[j] = f(x);
        if (!std::isfinite(values[j])) {
            throw EvaluationError("non-finite value at interpolation node x=" + format_roundtrip(x));
        }
    }
    Eigen::VectorXd c(n);
    for (int k = 0; k < n; ++k) {
        KahanSum s;
        for (int j = 0; j < n; ++j) s.add(values[j] * std::cos(std::numbers::pi * k * (j + 0.5) / n));
        c[k] = (k == 0 ? 1.0 : 2.0) * s.value() / n;
    }
    return ChebPoly<double>(std::move(c));
}

namespace {

struct Grid {
    std::vector<double> x, fu, u;
};

Grid make_grid(const ScalarFn& f, const JacobiWeight& w, int points) {
    if (points < 8) throw ArgumentError("Remez grid needs at least 8 points");
    Grid g;
    for (int i = 0; i < points; ++i) {
        if ((i == 0 && w.delta() > 0) || (i == points - 1 && w.gamma() > 0)) continue;
        double x = -std::cos(std::numbers::pi * i / (points - 1));
        if (i == 0) x = -1.0;
        if (i == points - 1) x = 1.0;
        const double fx = f(x);
        if (!std::isfinite(fx)) throw EvaluationError("non-finite value at x=" + format_roundtrip(x));
        const double ux = weight_eval(w, x);
        g.x.push_back(x);
        g.u.push_back(ux);
        g.fu.push_back(fx * ux);
    }
    return g;
}

std::vector<double> residual(const Grid& g, const ChebPoly<double>& p) {
    std::vector<double> r(g.x.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = g.fu[i] - g.u[i] * p(g.x[i]);
    return r;
}

double max_abs(const std::vector<double>& r, std::size_t* where = nullptr) {
    double best = -1.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (std::abs(r[i]) > best) {
            best = std::abs(r[i]);
            if (where) *where = i;
        }
    }
    return best;
}

struct Reference {
    std::vector<double> x, u, fu;
};

Reference reference_from_grid(const Grid& g, const std::vector<std::size_t>& idx) {
    Reference ref;
    for (auto k : idx) {
        ref.x.push_back(g.x[k]);
        ref.u.push_back(g.u[k]);
        ref.fu.push_back(g.fu[k]);
    }
    return ref;
}

// Solve u_i (f_i - P(x_i)) = (-1)^i h on the reference.
std::pair<ChebPoly<double>, double> solve_reference(const Reference& ref, int m) {
    const int n = m + 2;
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double x = ref.x[k];
        double t_prev = 1.0, t = x;
        for (int j = 0; j <= m; ++j) {
            double tj;
            if (j == 0) {
                tj = 1.0;
            } else if (j == 1) {
                tj = x;
            } else {
                tj = 2 * x * t - t_prev;
                t_prev = t;
                t = tj;
            }
            A(i, j) = ref.u[k] * tj;
        }
        A(i, m + 1) = (i % 2 == 0) ? 1.0 : -1.0;
        b[i] = ref.fu[k];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < n) {
        std::string pts;
        for (double x : ref.x) pts += (pts.empty() ? "" : ", ") + format_roundtrip(x);
        throw SingularSystemError("singular alternation system on reference {" + pts + "}");
    }
    const Eigen::VectorXd sol = qr.solve(b);
    return {ChebPoly<double>(sol.head(m + 1)), sol[m + 1]};
}

// One index per maximal same-sign run (largest |r|), trimmed to n points
// while keeping alternation and the global maximum.
std::vector<std::size_t> alternating_extrema(const std::vector<double>& r, std::size_t n) {
    std::vector<std::size_t> pick;
    int sign = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const int s = r[i] > 0 ? 1 : (r[i] < 0 ? -1 : sign);
        if (s == 0) continue;
        if (s != sign || pick.empty()) {
            pick.push_back(i);
            sign = s;
        } else if (std::abs(r[i]) > std::abs(r[pick.back()])) {
            pick.back() = i;
        }
    }
    auto mag = [&](std::size_t j) { return std::abs(r[pick[j]]); };
    while (pick.size() > n) {
        if (pick.size() == n + 1) {
            pick.erase(mag(0) < mag(pick.size() - 1) ? pick.begin() : pick.end() - 1);
            continue;
        }
        std::size_t lo = 0;
        for (std::size_t j = 1; j < pick.size(); ++j)
            if (mag(j) < mag(lo)) lo = j;
        if (lo == 0 || lo + 1 == pick.size()) {
            pick.erase(pick.begin() + static_cast<std::ptrdiff_t>(lo));
        } else {
            const std::size_t nb = mag(lo - 1) < mag(lo + 1) ? lo - 1 : lo + 1;
            pick.erase(pick.begin() + static_cast<std::ptrdiff_t>(std::max(lo, nb)));
            pick.erase(pick.begin() + static_cast<std::ptrdiff_t>(std::min(lo, nb)));
        }
    }
    return pick;
}

// Replace one reference point by the global maximum, keeping signs alternating.
std::vector<std::size_t> single_exchange(std::vector<std::size_t> ref, const std::vector<double>& r, std::size_t top) {
    auto sgn = [&](std::size_t k) { return r[k] >= 0; };
    const auto pos = std::lower_bound(ref.begin(), ref.end(), top);
    if (pos != ref.end() && *pos == top) return ref;
    if (pos == ref.begin()) {
        if (sgn(ref.front()) == sgn(top)) {
            ref.front() = top;
        } else {
            ref.insert(ref.begin(), top);
            ref.pop_back();
        }
    } else if (pos == ref.end()) {
        if (sgn(ref.back()) == sgn(top)) {
            ref.back() = top;
        } else {
            ref.push_back(top);
            ref.erase(ref.begin());
        }
    } else {
        auto& replace = (sgn(*(pos - 1)) == sgn(top)) ? *(pos - 1) : *pos;
        replace = top;
    }
    return ref;
}

}  // namespace

ApproxReport weighted_remez(const ScalarFn& f, int m, const JacobiWeight& w, const RemezOptions& opts) {
    if (m < 0) throw ArgumentError("degree must be nonnegative");
    if (opts.tol <= 0 || opts.max_iterations < 1) throw ArgumentError("Remez tolerance and iteration cap must be positive");
    const Grid g = make_grid(f, w, opts.grid_points);
    const std::size_t n = static_cast<std::size_t>(m) + 2;
    if (g.x.size() < 2 * n) {
        throw ArgumentError("Remez grid of " + std::to_string(g.x.size()) + " points is too coarse for degree " +
                            std::to_string(m));
    }
    const double scale = std::max(max_abs(g.fu), std::numeric_limits<double>::min());
    const double rounding = opts.rounding_ulps * std::numeric_limits<double>::epsilon() * scale;

    std::vector<std::size_t> ref;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = -std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
        auto k = static_cast<std::size_t>(std::lower_bound(g.x.begin(), g.x.end(), target) - g.x.begin());
        if (k == g.x.size() || (k > 0 && target - g.x[k - 1] < g.x[k] - target)) --k;
        if (!ref.empty() && k <= ref.back()) k = ref.back() + 1;
        ref.push_back(k);
    }
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t cap = g.x.size() - (n - i);
        if (ref[i] > cap) ref[i] = cap;
        if (i + 1 < n && ref[i] >= ref[i + 1]) ref[i] = ref[i + 1] - 1;
    }

    ApproxReport best;
    best.m = m;
    best.resolution = rounding;
    best.error = std::numeric_limits<double>::infinity();
    std::vector<double> best_r;
    bool grid_converged = false;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        auto [p, h] = solve_reference(reference_from_grid(g, ref), m);
        const auto r = residual(g, p);
        std::size_t top = 0;
        const double emax = max_abs(r, &top);
        best.iterations = it;
        const double gap = emax - std::abs(h);
        grid_converged = gap <= opts.tol * emax || gap <= rounding;
        if (emax < best.error || grid_converged) {
            best.error = emax;
            best.levelled = std::abs(h);
            best.poly = p;
            best_r = r;
        }
        if (it == 1 && emax <= opts.polynomial_tol * std::max(1.0, scale)) {
            best.polynomial = true;
            best.converged = true;
            for (auto k : ref) {
                best.extrema.push_back(g.x[k]);
                best.residuals.push_back(r[k]);
            }
            return best;
        }
        if (grid_converged) break;
        auto next = alternating_extrema(r, n);
        if (next.size() < n || std::find(next.begin(), next.end(), top) == next.end()) next = single_exchange(ref, r, top);
        if (next == ref) break;
        ref = std::move(next);
    }

    // The grid optimum is only as fine as the grid; move each alternation
    // point to the nearby extremum of the continuous residual and re-level.
    auto weighted_residual = [&](const ChebPoly<double>& p, double x) {
        const double ux = weight_eval(w, x);
        return ux * (f(x) - p(x));
    };
    auto locate = [&](const ChebPoly<double>& p, const std::vector<double>& r, Reference& out) {
        out = Reference{};
        double peak = max_abs(r);
        for (auto k : alternating_extrema(r, n)) {
            double x = g.x[k], v = r[k];
            if (k > 0 && k + 1 < g.x.size()) {
                const double s = r[k] >= 0 ? 1.0 : -1.0;
                const ScalarFn F = [&](double t) { return s * weighted_residual(p, t); };
                const auto [xm, fm] = refine_local_max(F, g.x[k - 1], g.x[k], g.x[k + 1], s * r[k - 1], s * r[k],
                                                       s * r[k + 1], 1e-15, 100);
                x = xm;
                v = s * fm;
            }
            peak = std::max(peak, std::abs(v));
            out.x.push_back(x);
            out.u.push_back(weight_eval(w, x));
            out.fu.push_back(out.u.back() * f(x));
        }
        return peak;
    };

    if (grid_converged && best_r.size() == g.x.size()) {
        Reference cont;
        double emax = locate(best.poly, best_r, cont);
        best.error = emax;
        best.converged = false;
        for (int it = 0; it < opts.max_iterations && cont.x.size() == n; ++it) {
            const double gap = emax - best.levelled;
            if (gap <= opts.tol * emax || gap <= rounding) {
                best.converged = true;
                break;
            }
            auto [p, h] = solve_reference(cont, m);
            const auto r = residual(g, p);
            Reference next;
            const double e = locate(p, r, next);
            ++best.iterations;
            if (e > best.error * (1 + opts.tol) + rounding) break;
            best.poly = p;
            best.levelled = std::abs(h);
            best.error = e;
            best_r = r;
            emax = e;
            cont = std::move(next);
        }
        for (std::size_t i = 0; i < cont.x.size(); ++i) {
            best.extrema.push_back(cont.x[i]);
            best.residuals.push_back(cont.fu[i] - cont.u[i] * best.poly(cont.x[i]));
        }
        return best;
    }

    for (auto k : alternating_extrema(best_r, n)) {
        best.extrema.push_back(g.x[k]);
        best.residuals.push_back(best_r[k]);
    }
    return best;
}

double favard_rhs(const ExprAst& f, int r, int m, const JacobiWeight& w, const GridConfig& grid) {
    if (r < 1 || m < r) throw ArgumentError("Favard bound needs m >= r >= 1");
    return weighted_sup_norm(derivative_function(f, r), w, r, grid).value / int_pow(static_cast<double>(m), r);
}

}  // namespace compose_approx
