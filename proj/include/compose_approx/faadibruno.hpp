#pragma once

// r-th derivatives of f o g evaluated by the explicit Faa di Bruno sums,
// from derivative data of f and g. Independent of the jet composition route.

#include <map>
#include <span>
#include <vector>

#include "compose_approx/combinatorics.hpp"
#include "compose_approx/expr.hpp"
#include "compose_approx/jetn.hpp"

namespace compose_approx {

/// D^l f at g(x0), keyed by multi-index l.
using PartialMap = std::map<MultiIndex, double>;

PartialMap partials_from_jet(const MultiJet& jet);

/// Partition-vector sum: sum r!/(k_1!..k_r!) f^(k)(g) prod (g^(i)/i!)^{k_i}.
/// Both sequences hold derivatives of orders 0..r.
double composite_derivative_1d(std::span<const double> f_derivs, std::span<const double> g_derivs, int r,
                               const EnumerationLimits& limits = {});

/// Same quantity through incomplete Bell polynomials: sum_k f^(k)(g) B_{r,k}(g', ..., g^(r-k+1)).
double composite_derivative_bell(std::span<const double> f_derivs, std::span<const double> g_derivs, int r,
                                 const EnumerationLimits& limits = {});

/// Multivariate outer function: sum over partition vectors and composition
/// matrices with coefficient r!/(prod q_ij! prod (i!)^{k_i}). `g_derivs[j]`
/// holds g_j^(0..r)(x0).
double composite_derivative_nd(const PartialMap& f_partials, std::span<const std::vector<double>> g_derivs, int r,
                               const EnumerationLimits& limits = {});

/// (f o g)^(0..r)(x0) from expressions: jets for g_j, jetn_partials for f, and
/// composite_derivative_nd per order.
std::vector<double> composite_jet(const ExprAst& f, std::span<const ExprAst> g, double x0, int r);

/// The same derivatives by evaluating f directly on the jets of g_j.
std::vector<double> composite_jet_oracle(const ExprAst& f, std::span<const ExprAst> g, double x0, int r);

}  // namespace compose_approx
