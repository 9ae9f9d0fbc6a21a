#include "compose_approx/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "compose_approx/combinatorics.hpp"
#include "compose_approx/errors.hpp"
#include "compose_approx/faadibruno.hpp"
#include "compose_approx/harness.hpp"
#include "compose_approx/minimax.hpp"
#include "compose_approx/numeric.hpp"
#include "compose_approx/weighted.hpp"

namespace compose_approx::cli {

namespace {

struct Common {
    std::string out_dir = "reports";
    int grid = GridConfig{}.points;
    double tol = RemezOptions{}.tol;
    int remez_grid = RemezOptions{}.grid_points;
    int max_iterations = RemezOptions{}.max_iterations;
    std::uint64_t seed = 0;
    bool strict = false;

    GridConfig grid_config() const {
        GridConfig g;
        g.points = grid;
        return g;
    }
    RemezOptions remez() const {
        RemezOptions r;
        r.grid_points = remez_grid;
        r.tol = tol;
        r.max_iterations = max_iterations;
        return r;
    }
};

struct Weight {
    double gamma = 0.0;
    double delta = 0.0;
    JacobiWeight get() const { return JacobiWeight(gamma, delta); }
};

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) parts.push_back(cur);
    if (parts.empty()) throw ArgumentError("empty list");
    return parts;
}

std::vector<ExprAst> parse_inner(const std::string& text) {
    std::vector<ExprAst> g;
    for (const auto& part : split_commas(text)) g.push_back(parse_univariate(part));
    return g;
}

std::vector<Interval> parse_box(const std::string& text) {
    std::vector<Interval> box;
    for (const auto& part : split_commas(text)) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) throw ArgumentError("box side '" + part + "' must look like lo:hi");
        try {
            box.push_back({std::stod(part.substr(0, colon)), std::stod(part.substr(colon + 1))});
        } catch (const std::logic_error&) {
            throw ArgumentError("box side '" + part + "' must look like lo:hi");
        }
    }
    return box;
}

std::string num(double v) { return format_double(v, 15); }

void add_weight(CLI::App* cmd, Weight& w) {
    cmd->add_option("--gamma", w.gamma, "exponent of (1-x), in [0,1)")->capture_default_str();
    cmd->add_option("--delta", w.delta, "exponent of (1+x), in [0,1)")->capture_default_str();
}

}  // namespace

std::vector<int> parse_degree_list(const std::string& text) {
    std::vector<int> ms;
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::logic_error&) {
            throw ArgumentError("bad degree '" + s + "' in '" + text + "'");
        }
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::string cur;
        std::istringstream in(text);
        while (std::getline(in, cur, ':')) parts.push_back(cur);
        if (parts.size() < 2 || parts.size() > 3) throw ArgumentError("degree range must be lo:hi or lo:hi:step");
        const int lo = to_int(parts[0]), hi = to_int(parts[1]);
        const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
        if (step < 1 || hi < lo) throw ArgumentError("degree range '" + text + "' is empty");
        for (int m = lo; m <= hi; m += step) ms.push_back(m);
    } else {
        for (const auto& part : split_commas(text)) ms.push_back(to_int(part));
    }
    return ms;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Composite-function derivatives, weighted norms and best approximation"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.set_config("--config", "", "flat key=value file of defaults")->envname("COMPOSE_APPROX_CONFIG");
    app.add_option("--out", common.out_dir, "report directory")->capture_default_str();
    app.add_option("--grid", common.grid, "sampling points for sup norms")->check(CLI::Range(3, 1 << 24))->capture_default_str();
    app.add_option("--tol", common.tol, "Remez relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--remez-grid", common.remez_grid, "Remez grid points")->check(CLI::Range(8, 1 << 24))->capture_default_str();
    app.add_option("--max-iterations", common.max_iterations, "Remez iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--seed", common.seed, "seed echoed in reports")->capture_default_str();
    app.add_flag("--strict", common.strict, "exit 3 when an approximation does not converge");

    // bell
    int bell_r = 0;
    std::optional<int> bell_k;
    auto* bell = app.add_subcommand("bell", "Bell number B_r, or the monomials of B_{r,k}");
    bell->add_option("r", bell_r, "order")->required()->check(CLI::PositiveNumber);
    bell->add_option("k", bell_k, "number of blocks");

    // faa
    std::string faa_f, faa_g;
    double faa_x0 = 0.0;
    int faa_r = 1;
    bool faa_compare = false;
    auto* faa = app.add_subcommand("faa", "derivatives of f(g_1(x), ..., g_n(x)) at x0, orders 0..r");
    faa->add_option("--f", faa_f, "outer expression in y1..yn")->required();
    faa->add_option("--g", faa_g, "comma-separated inner expressions in x")->required();
    faa->add_option("--x0", faa_x0, "evaluation point")->required();
    faa->add_option("--r", faa_r, "highest order")->required()->check(CLI::NonNegativeNumber);
    faa->add_flag("--compare-jets", faa_compare, "also evaluate f on the jets of g and report the disagreement");

    // norm
    std::string norm_f;
    int norm_r = 1;
    Weight norm_w;
    auto* norm = app.add_subcommand("norm", "weighted Sobolev norm ||f u|| + ||f^(r) phi^r u||");
    norm->add_option("--f", norm_f, "expression in x")->required();
    norm->add_option("--r", norm_r, "order")->required()->check(CLI::PositiveNumber);
    add_weight(norm, norm_w);

    // bestapprox
    std::string ba_f;
    int ba_m = 0;
    Weight ba_w;
    auto* ba = app.add_subcommand("bestapprox", "weighted best approximation error E_m(f)_u by Remez exchange");
    ba->add_option("--f", ba_f, "expression in x")->required();
    ba->add_option("--m", ba_m, "polynomial degree")->required()->check(CLI::NonNegativeNumber);
    add_weight(ba, ba_w);

    // verify
    auto* verify = app.add_subcommand("verify", "run one of the bound checks");
    verify->require_subcommand(1);
    verify->fallthrough();

    std::string lem_f;
    int lem_r = 2, lem_k = 1;
    Weight lem_w;
    auto* lemma = verify->add_subcommand("lemma", "||f^(k) phi^k u|| <= C (||f u|| + ||f^(r) phi^r u||)");
    lemma->add_option("--f", lem_f, "expression in x")->required();
    lemma->add_option("--r", lem_r, "top order")->required()->check(CLI::PositiveNumber);
    lemma->add_option("--k", lem_k, "intermediate order, 0 < k < r")->required()->check(CLI::PositiveNumber);
    add_weight(lemma, lem_w);

    std::string cmp_f, cmp_g, cmp_box;
    int cmp_r = 1;
    Weight cmp_w;
    auto* composite = verify->add_subcommand("composite", "measure ||(f o g)^(r) phi^r u^r|| against the bound");
    composite->add_option("--f", cmp_f, "outer expression in y1..yn")->required();
    composite->add_option("--g", cmp_g, "comma-separated inner expressions in x")->required();
    composite->add_option("--r", cmp_r, "order")->required()->check(CLI::PositiveNumber);
    composite->add_option("--box", cmp_box, "box for f as lo:hi per variable, comma-separated (default: image of g + 5%)");
    add_weight(composite, cmp_w);

    std::string rate_f, rate_g, rate_ms, rate_name = "rate";
    int rate_r = 1;
    Weight rate_w;
    auto* rate = verify->add_subcommand("rate", "E_m(f o g)_u over degrees, slope and bound ratios; writes JSON and CSV");
    rate->add_option("--f", rate_f, "outer expression in y1..yn")->required();
    rate->add_option("--g", rate_g, "comma-separated inner expressions in x")->required();
    rate->add_option("--r", rate_r, "smoothness order")->required()->check(CLI::PositiveNumber);
    rate->add_option("--ms", rate_ms, "degrees: lo:hi, lo:hi:step or a comma list")->required();
    rate->add_option("--name", rate_name, "case name used in report file names")->capture_default_str();
    add_weight(rate, rate_w);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kArgumentError;
    }

    try {
        if (*bell) {
            if (!bell_k) {
                out << bell_number(bell_r) << '\n';
            } else {
                if (*bell_k < 1 || *bell_k > bell_r) throw ArgumentError("need 1 <= k <= r");
                for_each_partition_vector(bell_r, [&](const PartitionVector& p) {
                    if (p.blocks() != *bell_k) return;
                    out << partition_coefficient(p);
                    for (int i = 1; i <= bell_r; ++i) {
                        if (p.count(i) == 0) continue;
                        out << "*x" << i;
                        if (p.count(i) > 1) out << '^' << p.count(i);
                    }
                    out << '\n';
                });
            }
        } else if (*faa) {
            const auto g = parse_inner(faa_g);
            const auto f = parse_outer(faa_f, static_cast<int>(g.size()));
            const auto d = composite_jet(f, g, faa_x0, faa_r);
            for (std::size_t i = 0; i < d.size(); ++i) out << (i ? " " : "") << num(d[i]);
            out << '\n';
            if (faa_compare) {
                const auto j = composite_jet_oracle(f, g, faa_x0, faa_r);
                double worst = 0.0;
                out << "jets:";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    out << ' ' << num(j[i]);
                    const double scale = std::max(std::abs(j[i]), std::abs(d[i]));
                    if (scale > 0) worst = std::max(worst, std::abs(j[i] - d[i]) / scale);
                }
                out << "\nmax_rel_diff: " << num(worst) << '\n';
            }
        } else if (*norm) {
            const auto parts = sobolev_norm_parts(parse_univariate(norm_f), norm_r, norm_w.get(), common.grid_config());
            out << "fu " << num(parts.function.value) << " argmax " << num(parts.function.argmax) << '\n';
            out << "derivative " << num(parts.derivative.value) << " argmax " << num(parts.derivative.argmax) << '\n';
            out << "norm " << num(parts.total()) << '\n';
        } else if (*ba) {
            const auto f = parse_univariate(ba_f);
            const auto rep = weighted_remez([&](double x) { return eval_scalar(f, x); }, ba_m, ba_w.get(), common.remez());
            out << "error " << num(rep.error) << '\n';
            out << "levelled " << num(rep.levelled) << '\n';
            out << "iterations " << rep.iterations << '\n';
            out << "converged " << (rep.converged ? "true" : "false") << '\n';
            out << "chebyshev";
            for (int k = 0; k <= rep.poly.degree(); ++k) out << ' ' << num(rep.poly.coeff(k));
            out << '\n';
            if (!rep.converged && common.strict) {
                err << "Remez exchange did not converge\n";
                return kNumericalFailure;
            }
        } else if (*lemma) {
            auto j = to_json(verify_lemma(parse_univariate(lem_f), lem_r, lem_k, lem_w.get(), common.grid_config()));
            j["seed"] = common.seed;
            out << j.dump(2) << '\n';
        } else if (*composite) {
            const auto g = parse_inner(cmp_g);
            const auto f = parse_outer(cmp_f, static_cast<int>(g.size()));
            std::optional<std::vector<Interval>> box;
            if (!cmp_box.empty()) box = parse_box(cmp_box);
            auto j = to_json(verify_composite_bound(f, g, cmp_r, cmp_w.get(), common.grid_config(), box));
            j["seed"] = common.seed;
            out << j.dump(2) << '\n';
        } else if (*rate) {
            const auto g = parse_inner(rate_g);
            const auto f = parse_outer(rate_f, static_cast<int>(g.size()));
            RateOptions opts;
            opts.grid = common.grid_config();
            opts.remez = common.remez();
            opts.seed = common.seed;
            const auto ms = parse_degree_list(rate_ms);
            auto rep = verify_rate(f, g, rate_r, rate_w.get(), ms, opts);
            rep.name = rate_name;
            const auto path = write_rate_report(rep, common.out_dir);
            out << "report " << path.string() << '\n';
            out << "slope " << (std::isfinite(rep.slope) ? num(rep.slope) : "undefined") << " points "
                << rep.slope_points << '\n';
            out << "ratio_sup " << num(rep.ratio_sup) << '\n';
            for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
            if (common.strict) {
                for (bool c : rep.converged)
                    if (!c) return kNumericalFailure;
            }
        }
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return kArgumentError;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << '\n';
        return kArgumentError;
    } catch (const std::domain_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const std::runtime_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("compose_approx");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace compose_approx::cli
