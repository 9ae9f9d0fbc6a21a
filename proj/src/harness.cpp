#include "compose_approx/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "compose_approx/combinatorics.hpp"
#include "compose_approx/errors.hpp"
#include "compose_approx/faadibruno.hpp"
#include "compose_approx/numeric.hpp"

namespace compose_approx {

double ExponentSelector::product() const {
    double p = 1.0;
    for (std::size_t j = 0; j < norms.size(); ++j) p *= int_pow(norms[j], exponents[j]);
    return p;
}

std::vector<std::optional<double>> ExponentSelector::boundary_margins(double window) const {
    std::vector<std::optional<double>> out;
    for (double v : norms) {
        const double d = std::abs(v - 1.0);
        out.push_back(d < window ? std::optional<double>(d) : std::nullopt);
    }
    return out;
}

ExponentSelector select_exponents(std::span<const double> norms, int r) {
    if (r < 1) throw ArgumentError("order must be positive");
    ExponentSelector s;
    s.r = r;
    for (double v : norms) {
        if (!(v >= 0.0)) throw ArgumentError("norms must be nonnegative");
        s.norms.push_back(v);
        s.exponents.push_back(v <= 1.0 ? 0 : r);
    }
    return s;
}

namespace {

// ||f^(j) phi^j u|| for j = 0..r_max.
std::vector<double> derivative_norms(const ExprAst& f, int r_max, const JacobiWeight& w, const GridConfig& grid) {
    std::vector<double> out;
    for (int j = 0; j <= r_max; ++j) out.push_back(weighted_sup_norm(derivative_function(f, j), w, j, grid).value);
    return out;
}

LemmaRecord lemma_record(const std::vector<double>& norms, int r, int k, const JacobiWeight& w) {
    if (!(k > 0 && k < r)) throw ArgumentError("lemma check needs 0 < k < r");
    if (!w.is_base()) throw ArgumentError("lemma check needs weight exponents in [0, 1)");
    LemmaRecord rec;
    rec.r = r;
    rec.k = k;
    rec.weight = w;
    rec.lhs = norms[static_cast<std::size_t>(k)];
    rec.fu_norm = norms[0];
    rec.top_norm = norms[static_cast<std::size_t>(r)];
    rec.constant = chained_lemma_constant(r, k, w);
    rec.rhs = rec.constant * (rec.fu_norm + rec.top_norm);
    rec.holds = rec.lhs <= rec.rhs * (1 + 1e-9);
    rec.ratio = rec.rhs > 0 ? rec.lhs / rec.rhs : (rec.lhs == 0 ? 0.0 : std::numeric_limits<double>::infinity());
    return rec;
}

std::vector<double> sample_component(const ExprAst& g, const std::vector<double>& xs) {
    std::vector<double> v;
    v.reserve(xs.size());
    for (double x : xs) v.push_back(eval_scalar(g, x));
    return v;
}

void check_univariate(std::span<const ExprAst> g) {
    if (g.empty()) throw ArgumentError("need at least one inner component");
    for (const auto& gj : g)
        if (gj.arity() != 1) throw ArgumentError("inner components must be univariate");
}

struct BoundParts {
    std::vector<Interval> box;
    double f_norm = 0.0;
    std::vector<double> g_norms;
    ExponentSelector exponents;
    double bell = 0.0;
    double rhs = 0.0;
};

BoundParts bound_parts(const ExprAst& f, std::span<const ExprAst> g, int r, const JacobiWeight& g_weight,
                       const GridConfig& grid, std::optional<std::vector<Interval>> box) {
    check_univariate(g);
    if (static_cast<std::size_t>(f.arity()) != g.size()) {
        throw ArgumentError("outer function takes " + std::to_string(f.arity()) + " variables but " +
                            std::to_string(g.size()) + " inner components were given");
    }
    BoundParts b;
    if (box) {
        if (box->size() != g.size()) throw ArgumentError("box dimension does not match the number of inner components");
        const auto xs = chebyshev_sample_points(grid.points, grid.endpoint_exclusion);
        for (std::size_t j = 0; j < g.size(); ++j) {
            const auto vals = sample_component(g[j], xs);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (vals[i] < (*box)[j].lo || vals[i] > (*box)[j].hi) {
                    throw DomainError("inner component g" + std::to_string(j + 1) + " leaves the box at x=" +
                                      format_roundtrip(xs[i]) + ": value " + format_roundtrip(vals[i]) + " outside [" +
                                      format_roundtrip((*box)[j].lo) + ", " + format_roundtrip((*box)[j].hi) + "]");
                }
            }
        }
        b.box = *box;
    } else {
        b.box = image_box(g, grid);
    }
    b.f_norm = multivariate_sobolev_norm(f, r, b.box, grid);
    for (const auto& gj : g) b.g_norms.push_back(sobolev_norm(gj, r, g_weight, grid));
    b.exponents = select_exponents(b.g_norms, r);
    b.bell = to_double(bell_number(r));
    b.rhs = int_pow(static_cast<double>(g.size()), r) * b.bell * b.f_norm * b.exponents.product();
    return b;
}

Json interval_json(const std::vector<Interval>& box) {
    Json out = Json::array();
    for (const auto& side : box) out.push_back(Json::array({side.lo, side.hi}));
    return out;
}

Json selector_json(const ExponentSelector& s) {
    Json out;
    out["norms"] = s.norms;
    out["exponents"] = s.exponents;
    out["product"] = s.product();
    Json margins = Json::array();
    for (const auto& m : s.boundary_margins()) margins.push_back(m ? Json(*m) : Json(nullptr));
    out["boundary_margins"] = margins;
    return out;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

LemmaRecord verify_lemma(const ExprAst& f, int r, int k, const JacobiWeight& w, const GridConfig& grid) {
    if (f.arity() != 1) throw ArgumentError("lemma check needs a univariate function");
    if (!(k > 0 && k < r)) throw ArgumentError("lemma check needs 0 < k < r");
    std::vector<double> norms(static_cast<std::size_t>(r + 1), 0.0);
    for (int j : {0, k, r}) norms[static_cast<std::size_t>(j)] = weighted_sup_norm(derivative_function(f, j), w, j, grid).value;
    return lemma_record(norms, r, k, w);
}

std::vector<LemmaRecord> verify_lemma_all(const ExprAst& f, int r_max, const JacobiWeight& w, const GridConfig& grid) {
    if (f.arity() != 1) throw ArgumentError("lemma check needs a univariate function");
    if (r_max < 2) throw ArgumentError("lemma suite needs r_max >= 2");
    const auto norms = derivative_norms(f, r_max, w, grid);
    std::vector<LemmaRecord> out;
    for (int r = 2; r <= r_max; ++r)
        for (int k = 1; k < r; ++k) out.push_back(lemma_record(norms, r, k, w));
    return out;
}

std::vector<Interval> image_box(std::span<const ExprAst> g, const GridConfig& grid, double margin) {
    check_univariate(g);
    const auto xs = chebyshev_sample_points(grid.points, grid.endpoint_exclusion);
    std::vector<Interval> box;
    for (const auto& gj : g) {
        const auto vals = sample_component(gj, xs);
        const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
        const double width = *hi - *lo;
        const double pad = width > 0 ? margin * width : margin * std::max(1.0, std::abs(*lo));
        box.push_back({*lo - pad, *hi + pad});
    }
    return box;
}

CompositeRecord verify_composite_bound(const ExprAst& f, std::span<const ExprAst> g, int r, const JacobiWeight& w,
                                       const GridConfig& grid, std::optional<std::vector<Interval>> box) {
    if (r < 1) throw ArgumentError("order must be positive");
    if (!w.is_base()) throw ArgumentError("composite bound needs weight exponents in [0, 1)");
    auto parts = bound_parts(f, g, r, w, grid, std::move(box));
    const std::vector<ExprAst> inner(g.begin(), g.end());
    const ScalarFn top = [&](double x) { return composite_jet(f, inner, x, r)[static_cast<std::size_t>(r)]; };

    CompositeRecord rec;
    rec.lhs = weighted_sup_norm(top, w.power(r), r, grid).value;
    rec.f_norm = parts.f_norm;
    rec.box = std::move(parts.box);
    rec.g_norms = std::move(parts.g_norms);
    rec.exponents = std::move(parts.exponents);
    rec.bell = parts.bell;
    rec.rhs_sans_c = parts.rhs;
    rec.ratio = rec.rhs_sans_c > 0 ? rec.lhs / rec.rhs_sans_c : 0.0;
    return rec;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ArgumentError("slope fit needs equally many abscissae and ordinates");
    if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += std::log(x[i]);
        sy += std::log(y[i]);
    }
    const double n = static_cast<double>(x.size());
    const double mx = sx / n, my = sy / n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxx > 0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

RateReport verify_rate(const ExprAst& f, std::span<const ExprAst> g, int r, const JacobiWeight& w,
                       std::span<const int> ms, const RateOptions& opts) {
    if (r < 1) throw ArgumentError("order must be positive");
    if (!w.is_base()) throw ArgumentError("rate check needs weight exponents in [0, 1)");
    if (ms.empty()) throw ArgumentError("need at least one degree");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i] < r) throw ArgumentError("degrees must be at least r=" + std::to_string(r));
        if (i > 0 && ms[i] <= ms[i - 1]) throw ArgumentError("degrees must be strictly increasing");
    }
    auto parts = bound_parts(f, g, r, w.root(r), opts.grid, std::nullopt);

    RateReport rep;
    rep.f = f.to_string();
    for (const auto& gj : g) rep.g.push_back(gj.to_string());
    rep.r = r;
    rep.weight = w;
    rep.options = opts;
    rep.f_norm = parts.f_norm;
    rep.box = parts.box;
    rep.g_norms = parts.g_norms;
    rep.exponents = parts.exponents;
    rep.bell = parts.bell;
    rep.bound_rhs = parts.rhs;

    const std::vector<ExprAst> inner(g.begin(), g.end());
    std::vector<double> y(inner.size());
    const ScalarFn composite = [&](double x) {
        for (std::size_t j = 0; j < inner.size(); ++j) y[j] = eval_scalar(inner[j], x);
        return eval_scalar(f, y);
    };

    std::vector<double> fit_m, fit_e;
    for (int m : ms) {
        const auto a = weighted_remez(composite, m, w, opts.remez);
        const bool floor = a.polynomial || a.error <= opts.floor_factor * a.resolution;
        rep.ms.push_back(m);
        rep.errors.push_back(a.error);
        rep.levelled.push_back(a.levelled);
        rep.converged.push_back(a.converged);
        rep.at_noise_floor.push_back(floor);
        const double ratio = rep.bound_rhs > 0 ? int_pow(static_cast<double>(m), r) * a.error / rep.bound_rhs
                                               : std::numeric_limits<double>::infinity();
        rep.ratios.push_back(ratio);
        if (!a.converged) {
            rep.warnings.push_back("m=" + std::to_string(m) + ": Remez did not converge; excluded from the slope fit");
        } else {
            rep.ratio_sup = std::max(rep.ratio_sup, ratio);
            if (!floor && a.error > 0) {
                fit_m.push_back(m);
                fit_e.push_back(a.error);
            }
        }
    }
    rep.slope = loglog_slope(fit_m, fit_e);
    rep.slope_points = static_cast<int>(fit_m.size());
    if (rep.slope_points < 2) rep.warnings.push_back("fewer than two degrees above the noise floor; slope undefined");
    return rep;
}

std::vector<FavardReport> verify_favard(const ExprAst& f, const JacobiWeight& w, std::span<const int> rs, int m_max,
                                        const RateOptions& opts) {
    if (f.arity() != 1) throw ArgumentError("Favard check needs a univariate function");
    if (rs.empty()) throw ArgumentError("need at least one order");
    const int r_min = *std::min_element(rs.begin(), rs.end());
    if (r_min < 1 || m_max < *std::max_element(rs.begin(), rs.end())) throw ArgumentError("need 1 <= r <= m_max");

    const ScalarFn fn = [&](double x) { return eval_scalar(f, x); };
    std::vector<ApproxReport> runs;
    for (int m = r_min; m <= m_max; ++m) runs.push_back(weighted_remez(fn, m, w, opts.remez));

    std::vector<FavardReport> out;
    for (int r : rs) {
        FavardReport rep;
        rep.f = f.to_string();
        rep.weight = w;
        rep.r = r;
        rep.derivative_norm = weighted_sup_norm(derivative_function(f, r), w, r, opts.grid).value;
        std::vector<double> fit_m, fit_ratio;
        for (const auto& a : runs) {
            if (a.m < r) continue;
            const double ratio = int_pow(static_cast<double>(a.m), r) * a.error / rep.derivative_norm;
            const bool usable = a.converged && !a.polynomial && a.error > opts.floor_factor * a.resolution;
            rep.ms.push_back(a.m);
            rep.errors.push_back(a.error);
            rep.usable.push_back(usable);
            rep.ratios.push_back(ratio);
            if (a.converged) rep.ratio_sup = std::max(rep.ratio_sup, ratio);
            if (usable) {
                fit_m.push_back(a.m);
                fit_ratio.push_back(ratio);
            }
        }
        rep.slope = loglog_slope(fit_m, fit_ratio);
        rep.slope_points = static_cast<int>(fit_m.size());
        out.push_back(std::move(rep));
    }
    return out;
}

Json to_json(const LemmaRecord& rec) {
    Json j;
    j["r"] = rec.r;
    j["k"] = rec.k;
    j["gamma"] = rec.weight.gamma();
    j["delta"] = rec.weight.delta();
    j["lhs"] = rec.lhs;
    j["rhs_norms"] = {{"fu", rec.fu_norm}, {"top", rec.top_norm}};
    j["constant"] = rec.constant;
    j["rhs"] = rec.rhs;
    j["holds"] = rec.holds;
    j["ratio"] = number_or_null(rec.ratio);
    return j;
}

Json to_json(const CompositeRecord& rec) {
    Json j;
    j["lhs"] = rec.lhs;
    j["f_norm"] = rec.f_norm;
    j["box"] = interval_json(rec.box);
    j["g_norms"] = rec.g_norms;
    j["exponents"] = selector_json(rec.exponents);
    j["bell"] = rec.bell;
    j["rhs_sans_C"] = rec.rhs_sans_c;
    j["ratio"] = rec.ratio;
    return j;
}

Json to_json(const RateReport& rep) {
    Json j;
    j["name"] = rep.name;
    j["f"] = rep.f;
    j["g"] = rep.g;
    j["r"] = rep.r;
    j["gamma"] = rep.weight.gamma();
    j["delta"] = rep.weight.delta();
    j["seed"] = rep.options.seed;
    j["config"] = {{"grid_points", rep.options.grid.points},
                   {"grid_rel_tol", rep.options.grid.rel_tol},
                   {"remez_grid_points", rep.options.remez.grid_points},
                   {"remez_tol", rep.options.remez.tol},
                   {"remez_max_iterations", rep.options.remez.max_iterations},
                   {"floor_factor", rep.options.floor_factor}};
    j["box"] = interval_json(rep.box);
    j["f_norm"] = rep.f_norm;
    j["g_norms"] = rep.g_norms;
    j["exponents"] = selector_json(rep.exponents);
    j["bell"] = rep.bell;
    j["bound_rhs"] = rep.bound_rhs;
    Json rows = Json::array();
    for (std::size_t i = 0; i < rep.ms.size(); ++i) {
        Json row;
        row["m"] = rep.ms[i];
        row["error"] = rep.errors[i];
        row["levelled"] = rep.levelled[i];
        row["bound"] = rep.bound_rhs / int_pow(static_cast<double>(rep.ms[i]), rep.r);
        row["ratio"] = number_or_null(rep.ratios[i]);
        row["converged"] = static_cast<bool>(rep.converged[i]);
        row["at_noise_floor"] = static_cast<bool>(rep.at_noise_floor[i]);
        rows.push_back(std::move(row));
    }
    j["degrees"] = std::move(rows);
    j["slope"] = number_or_null(rep.slope);
    j["slope_points"] = rep.slope_points;
    j["ratio_sup"] = number_or_null(rep.ratio_sup);
    j["warnings"] = rep.warnings;
    return j;
}

Json to_json(const FavardReport& rep) {
    Json j;
    j["f"] = rep.f;
    j["r"] = rep.r;
    j["gamma"] = rep.weight.gamma();
    j["delta"] = rep.weight.delta();
    j["derivative_norm"] = rep.derivative_norm;
    Json rows = Json::array();
    for (std::size_t i = 0; i < rep.ms.size(); ++i) {
        rows.push_back({{"m", rep.ms[i]},
                        {"error", rep.errors[i]},
                        {"ratio", rep.ratios[i]},
                        {"usable", static_cast<bool>(rep.usable[i])}});
    }
    j["degrees"] = std::move(rows);
    j["slope"] = number_or_null(rep.slope);
    j["slope_points"] = rep.slope_points;
    j["ratio_sup"] = rep.ratio_sup;
    return j;
}

std::string report_stem(const std::string& name, int r, const JacobiWeight& w) {
    return name + "-" + std::to_string(r) + "-" + format_roundtrip(w.gamma()) + "-" + format_roundtrip(w.delta());
}

std::string rate_csv(const RateReport& rep) {
    std::ostringstream out;
    out << "m,E_m,levelled,bound,ratio,converged,at_noise_floor\n";
    for (std::size_t i = 0; i < rep.ms.size(); ++i) {
        out << rep.ms[i] << ',' << format_roundtrip(rep.errors[i]) << ',' << format_roundtrip(rep.levelled[i]) << ','
            << format_roundtrip(rep.bound_rhs / int_pow(static_cast<double>(rep.ms[i]), rep.r)) << ','
            << format_roundtrip(rep.ratios[i]) << ',' << (rep.converged[i] ? 1 : 0) << ','
            << (rep.at_noise_floor[i] ? 1 : 0) << '\n';
    }
    return out.str();
}

std::filesystem::path write_rate_report(const RateReport& rep, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto stem = report_stem(rep.name.empty() ? "rate" : rep.name, rep.r, rep.weight);
    const auto json_path = dir / (stem + ".json");
    {
        std::ofstream out(json_path);
        if (!out) throw ArgumentError("cannot write report " + json_path.string());
        out << to_json(rep).dump(2) << '\n';
    }
    std::ofstream csv(dir / (stem + ".csv"));
    if (!csv) throw ArgumentError("cannot write report " + (dir / (stem + ".csv")).string());
    csv << rate_csv(rep);
    return json_path;
}

namespace corpus {

std::vector<std::string> lemma_functions() {
    return {"exp(x)",           "sin(3*x)",      "1/(2+x)",        "log(2+x)",           "(1+x)^2.5",
            "(1-x)^3.5",        "x^5-2*x^3+x",   "cos(2*x)*exp(x/2)", "sqrt(3-x)",       "(1-x^2)^2.5"};
}

std::vector<JacobiWeight> lemma_weights() {
    std::vector<JacobiWeight> out;
    for (double g : {0.0, 0.25, 0.5, 0.75})
        for (double d : {0.0, 0.25, 0.5, 0.75}) out.emplace_back(g, d);
    return out;
}

std::vector<WeightedCase> favard_cases() {
    return {
        {"exp", "exp(x)", JacobiWeight::unit()},
        {"right-root-3", "(1+x)^1.5", JacobiWeight::unit()},
        {"left-root-5", "(1-x)^2.5", JacobiWeight::unit()},
        {"left-weighted", "(1-x)^1.25", JacobiWeight(0.5, 0.5)},
        {"right-weighted", "(1+x)^1.75", JacobiWeight(0.25, 0.75)},
    };
}

}  // namespace corpus

}  // namespace compose_approx
