#include "compose_approx/faadibruno.hpp"

#include <string>

#include "compose_approx/errors.hpp"
#include "compose_approx/numeric.hpp"

namespace compose_approx {

namespace {

void check_lengths(std::size_t got, int r, const char* what) {
    if (r < 1) throw ArgumentError("derivative order must be positive");
    if (got != static_cast<std::size_t>(r + 1)) {
        throw ArgumentError(std::string(what) + " must hold derivatives of orders 0.." + std::to_string(r) + ", got " +
                            std::to_string(got) + " values");
    }
}

}  // namespace

PartialMap partials_from_jet(const MultiJet& jet) {
    PartialMap out;
    for (const auto& l : jet.basis().indices()) out.emplace(l, jet.partial(l));
    return out;
}

double composite_derivative_1d(std::span<const double> f_derivs, std::span<const double> g_derivs, int r,
                               const EnumerationLimits& limits) {
    check_lengths(f_derivs.size(), r, "f derivatives");
    check_lengths(g_derivs.size(), r, "g derivatives");
    KahanSum sum;
    for_each_partition_vector(
        r,
        [&](const PartitionVector& p) {
            double term = to_double(partition_coefficient(p)) * f_derivs[static_cast<std::size_t>(p.blocks())];
            for (int i = 1; i <= r; ++i) {
                const int k = p.count(i);
                if (k > 0) term *= int_pow(g_derivs[static_cast<std::size_t>(i)], k);
            }
            sum.add(term);
        },
        limits);
    return sum.value();
}

double composite_derivative_bell(std::span<const double> f_derivs, std::span<const double> g_derivs, int r,
                                 const EnumerationLimits& limits) {
    check_lengths(f_derivs.size(), r, "f derivatives");
    check_lengths(g_derivs.size(), r, "g derivatives");
    KahanSum sum;
    for (int k = 1; k <= r; ++k) {
        const auto args = g_derivs.subspan(1, static_cast<std::size_t>(r - k + 1));
        sum.add(f_derivs[static_cast<std::size_t>(k)] * incomplete_bell(r, k, args, limits));
    }
    return sum.value();
}

double composite_derivative_nd(const PartialMap& f_partials, std::span<const std::vector<double>> g_derivs, int r,
                               const EnumerationLimits& limits) {
    const int n = static_cast<int>(g_derivs.size());
    if (n < 1) throw ArgumentError("need at least one inner component");
    for (const auto& g : g_derivs) check_lengths(g.size(), r, "inner component derivatives");
    KahanSum sum;
    MultiIndex p(static_cast<std::size_t>(n));
    for_each_partition_vector(
        r,
        [&](const PartitionVector& pv) {
            for_each_composition_matrix(
                pv, n,
                [&](const CompositionMatrix& q) {
                    for (int j = 1; j <= n; ++j) {
                        int col = 0;
                        for (int i = 1; i <= r; ++i) col += q.q(i, j);
                        p[static_cast<std::size_t>(j - 1)] = col;
                    }
                    const auto it = f_partials.find(p);
                    if (it == f_partials.end()) {
                        throw ArgumentError("missing partial derivative D^" + to_string(p) + " f");
                    }
                    double term = to_double(composition_coefficient(q)) * it->second;
                    for (int i = 1; i <= r; ++i) {
                        for (int j = 1; j <= n; ++j) {
                            const int e = q.q(i, j);
                            if (e > 0) term *= int_pow(g_derivs[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)], e);
                        }
                    }
                    sum.add(term);
                },
                limits);
        },
        limits);
    return sum.value();
}

namespace {

std::vector<Jet> inner_jets(std::span<const ExprAst> g, double x0, int r) {
    if (g.empty()) throw ArgumentError("need at least one inner component");
    std::vector<Jet> jets;
    jets.reserve(g.size());
    const Jet x = Jet::lift(x0, r);
    for (const auto& gj : g) {
        if (gj.arity() != 1) throw ArgumentError("inner components must be univariate");
        jets.push_back(eval_jet1(gj, x));
    }
    return jets;
}

}  // namespace

std::vector<double> composite_jet(const ExprAst& f, std::span<const ExprAst> g, double x0, int r) {
    if (r < 0) throw ArgumentError("derivative order must be nonnegative");
    if (static_cast<std::size_t>(f.arity()) != g.size()) {
        throw ArgumentError("outer function takes " + std::to_string(f.arity()) + " variables but " +
                            std::to_string(g.size()) + " inner components were given");
    }
    const auto jets = inner_jets(g, x0, r);
    std::vector<double> y0;
    std::vector<std::vector<double>> g_derivs;
    for (const auto& j : jets) {
        y0.push_back(j.value());
        g_derivs.push_back(j.derivatives());
    }
    const auto partials = partials_from_jet(jetn_partials(f, y0, r));
    std::vector<double> out{partials.at(MultiIndex(g.size(), 0))};
    for (int order = 1; order <= r; ++order) {
        std::vector<std::vector<double>> truncated;
        for (const auto& d : g_derivs) truncated.emplace_back(d.begin(), d.begin() + order + 1);
        out.push_back(composite_derivative_nd(partials, truncated, order));
    }
    return out;
}

std::vector<double> composite_jet_oracle(const ExprAst& f, std::span<const ExprAst> g, double x0, int r) {
    if (static_cast<std::size_t>(f.arity()) != g.size()) throw ArgumentError("outer arity does not match inner count");
    const auto jets = inner_jets(g, x0, r);
    return eval_jet1(f, jets).derivatives();
}

}  // namespace compose_approx
