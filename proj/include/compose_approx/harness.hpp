#pragma once

// Desk-scale checks of the derivative estimate, the composite-derivative
// bound, the Favard inequality and the composite approximation rate, with
// JSON/CSV reporting.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "compose_approx/expr.hpp"
#include "compose_approx/minimax.hpp"
#include "compose_approx/weighted.hpp"
#include "json.hpp"

namespace compose_approx {

using Json = nlohmann::ordered_json;

struct ExponentSelector {
    std::vector<double> norms;
    int r = 0;
    std::vector<int> exponents;

    /// prod norms[j]^exponents[j]; always >= 1.
    double product() const;
    /// |norm - 1| for norms within `window` of the boundary, else nullopt.
    std::vector<std::optional<double>> boundary_margins(double window = 1e-6) const;
};

/// s_j = 0 when ||g_j|| <= 1, s_j = r otherwise.
ExponentSelector select_exponents(std::span<const double> norms, int r);

struct LemmaRecord {
    int r = 0;
    int k = 0;
    JacobiWeight weight = JacobiWeight::unit();
    double lhs = 0.0;         // ||f^(k) phi^k u||
    double fu_norm = 0.0;     // ||f u||
    double top_norm = 0.0;    // ||f^(r) phi^r u||
    double constant = 0.0;
    double rhs = 0.0;
    bool holds = false;
    double ratio = 0.0;
};

LemmaRecord verify_lemma(const ExprAst& f, int r, int k, const JacobiWeight& w, const GridConfig& grid = {});

/// Every 1 <= k < r <= r_max, sharing the measured norms.
std::vector<LemmaRecord> verify_lemma_all(const ExprAst& f, int r_max, const JacobiWeight& w,
                                          const GridConfig& grid = {});

struct CompositeRecord {
    double lhs = 0.0;  // ||(f o g)^(r) phi^r u^r||
    double f_norm = 0.0;
    std::vector<Interval> box;
    std::vector<double> g_norms;
    ExponentSelector exponents;
    double bell = 0.0;
    double rhs_sans_c = 0.0;
    double ratio = 0.0;
};

/// Samples of each g_j on the norm grid, widened by `margin` of their range.
std::vector<Interval> image_box(std::span<const ExprAst> g, const GridConfig& grid = {}, double margin = 0.05);

CompositeRecord verify_composite_bound(const ExprAst& f, std::span<const ExprAst> g, int r, const JacobiWeight& w,
                                       const GridConfig& grid = {},
                                       std::optional<std::vector<Interval>> box = std::nullopt);

struct RateOptions {
    RemezOptions remez;
    GridConfig grid;
    /// E_m below floor_factor * (residual resolution) is at the noise floor.
    double floor_factor = 100.0;
    std::uint64_t seed = 0;
};

struct RateReport {
    std::string name;
    std::string f;
    std::vector<std::string> g;
    int r = 0;
    JacobiWeight weight = JacobiWeight::unit();
    std::vector<int> ms;
    std::vector<double> errors;
    std::vector<double> levelled;
    std::vector<bool> converged;
    std::vector<bool> at_noise_floor;
    std::vector<double> ratios;  // m^r E_m / bound_rhs
    double f_norm = 0.0;
    std::vector<Interval> box;
    std::vector<double> g_norms;  // W^r norms for the root weight u^(1/r)
    ExponentSelector exponents;
    double bell = 0.0;
    double bound_rhs = 0.0;  // n^r B_r ||f|| prod ||g_j||^{s_j}
    double slope = 0.0;
    int slope_points = 0;
    double ratio_sup = 0.0;
    std::vector<std::string> warnings;
    RateOptions options;

    /// Points used by the slope fit: converged and above the noise floor.
    bool usable(std::size_t i) const { return converged[i] && !at_noise_floor[i] && errors[i] > 0; }
};

RateReport verify_rate(const ExprAst& f, std::span<const ExprAst> g, int r, const JacobiWeight& w,
                       std::span<const int> ms, const RateOptions& opts = {});

struct FavardReport {
    std::string f;
    JacobiWeight weight = JacobiWeight::unit();
    int r = 0;
    double derivative_norm = 0.0;  // ||f^(r) phi^r u||
    std::vector<int> ms;
    std::vector<double> errors;
    std::vector<bool> usable;
    std::vector<double> ratios;  // m^r E_m / ||f^(r) phi^r u||
    double slope = 0.0;
    int slope_points = 0;
    double ratio_sup = 0.0;
};

/// E_m for m = min(rs)..m_max once, then the Favard ratio per r.
std::vector<FavardReport> verify_favard(const ExprAst& f, const JacobiWeight& w, std::span<const int> rs, int m_max,
                                        const RateOptions& opts = {});

/// Least-squares slope of log y against log x; NaN with fewer than two points.
double loglog_slope(std::span<const double> x, std::span<const double> y);

Json to_json(const LemmaRecord& rec);
Json to_json(const CompositeRecord& rec);
Json to_json(const RateReport& rep);
Json to_json(const FavardReport& rep);

/// "<name>-<r>-<gamma>-<delta>"
std::string report_stem(const std::string& name, int r, const JacobiWeight& w);

/// Writes <stem>.json and <stem>.csv into `dir`, returning the JSON path.
std::filesystem::path write_rate_report(const RateReport& rep, const std::filesystem::path& dir);

std::string rate_csv(const RateReport& rep);

namespace corpus {

struct WeightedCase {
    std::string name;
    std::string f;
    JacobiWeight weight;
};

/// Ten functions in W^5_u for every weight of `lemma_weights()`.
std::vector<std::string> lemma_functions();
/// Exponent pairs {0, 1/4, 1/2, 3/4}^2.
std::vector<JacobiWeight> lemma_weights();
/// Five functions in W^3_u for their weight.
std::vector<WeightedCase> favard_cases();

}  // namespace corpus

}  // namespace compose_approx
