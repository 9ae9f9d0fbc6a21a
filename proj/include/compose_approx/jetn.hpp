#pragma once

// Multivariate truncated Taylor series over total degree <= r. Coefficients
// are stored graded by degree; each arithmetic routine mirrors the Jet1
// recurrence with scalar products replaced by products of homogeneous blocks,
// so a one-variable JetN reproduces Jet1 bit for bit.

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "compose_approx/errors.hpp"
#include "compose_approx/numeric.hpp"

namespace compose_approx {

using MultiIndex = std::vector<int>;

std::string to_string(const MultiIndex& index);

struct JetLimits {
    int max_dim = 6;
    int max_order = 10;
};

/// Graded monomial index set {l : |l| <= r} in n variables with the
/// homogeneous-block product tables.
class MonomialBasis {
public:
    struct Term {
        int a, b, out;
    };

    /// Shared, cached basis; throws ResourceLimitError beyond `limits`.
    static std::shared_ptr<const MonomialBasis> get(int dim, int order, const JetLimits& limits = {});

    MonomialBasis(int dim, int order);

    int dim() const noexcept { return dim_; }
    int order() const noexcept { return order_; }
    int size() const noexcept { return static_cast<int>(indices_.size()); }
    const MultiIndex& index(int i) const { return indices_[static_cast<std::size_t>(i)]; }
    const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
    /// Position of a multi-index, or -1 when it is absent (wrong length or degree > r).
    int find(const MultiIndex& l) const;
    int block_offset(int degree) const { return offsets_[static_cast<std::size_t>(degree)]; }
    int block_size(int degree) const {
        return offsets_[static_cast<std::size_t>(degree + 1)] - offsets_[static_cast<std::size_t>(degree)];
    }
    /// Terms of (degree i block) x (degree j block), i + j <= r.
    const std::vector<Term>& product(int i, int j) const {
        return products_[static_cast<std::size_t>(i * (order_ + 1) + j)];
    }
    /// l! = prod l_j! for the i-th multi-index.
    double factorial_weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }

private:
    int dim_;
    int order_;
    std::vector<MultiIndex> indices_;
    std::map<MultiIndex, int> positions_;
    std::vector<int> offsets_;
    std::vector<std::vector<Term>> products_;
    std::vector<double> weights_;
};

template <typename Scalar>
class JetN {
public:
    using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using BasisPtr = std::shared_ptr<const MonomialBasis>;

    JetN(BasisPtr basis, Coeffs coeffs) : basis_(std::move(basis)), c_(std::move(coeffs)) {
        if (!basis_ || c_.size() != basis_->size()) throw ArgumentError("JetN coefficient count mismatch");
    }

    static JetN constant(BasisPtr basis, Scalar value) {
        Coeffs c = Coeffs::Zero(basis->size());
        c[0] = value;
        return JetN(std::move(basis), std::move(c));
    }

    /// The coordinate function y_j (0-based j) expanded at y0_j = value.
    static JetN variable(BasisPtr basis, int j, Scalar value) {
        if (j < 0 || j >= basis->dim()) throw ArgumentError("variable index out of range");
        JetN v = constant(basis, value);
        if (basis->order() >= 1) v.c_[basis->block_offset(1) + j] = Scalar(1);
        return v;
    }

    const MonomialBasis& basis() const noexcept { return *basis_; }
    const BasisPtr& basis_ptr() const noexcept { return basis_; }
    int dim() const noexcept { return basis_->dim(); }
    int order() const noexcept { return basis_->order(); }
    Scalar value() const { return c_[0]; }
    const Coeffs& coeffs() const noexcept { return c_; }

    /// D^l f / l!; throws ArgumentError for an index outside the basis.
    Scalar coeff(const MultiIndex& l) const { return c_[locate(l)]; }
    /// D^l f = l! * coeff(l).
    Scalar partial(const MultiIndex& l) const {
        const int i = locate(l);
        return Scalar(basis_->factorial_weight(i)) * c_[i];
    }

    JetN operator-() const { return JetN(basis_, Coeffs(-c_)); }
    JetN& operator+=(const JetN& o) {
        check(o);
        c_ += o.c_;
        return *this;
    }
    JetN& operator-=(const JetN& o) {
        check(o);
        c_ -= o.c_;
        return *this;
    }
    JetN& operator+=(Scalar s) {
        c_[0] += s;
        return *this;
    }
    JetN& operator*=(Scalar s) {
        c_ *= s;
        return *this;
    }

    friend JetN operator+(JetN a, const JetN& b) { return a += b; }
    friend JetN operator-(JetN a, const JetN& b) { return a -= b; }
    friend JetN operator+(JetN a, Scalar s) { return a += s; }
    friend JetN operator+(Scalar s, JetN a) { return a += s; }
    friend JetN operator-(JetN a, Scalar s) { return a += -s; }
    friend JetN operator-(Scalar s, const JetN& a) { return (-a) + s; }
    friend JetN operator*(JetN a, Scalar s) { return a *= s; }
    friend JetN operator*(Scalar s, JetN a) { return a *= s; }

    friend JetN operator*(const JetN& a, const JetN& b) {
        a.check(b);
        const int r = a.order();
        Coeffs out = Coeffs::Zero(a.c_.size());
        for (int n = 0; n <= r; ++n) {
            Homogeneous acc = a.zero_block(n);
            for (int j = 0; j <= n; ++j) a.accumulate(acc, n, Scalar(1), a.c_, j, b.c_, n - j);
            a.store(out, n, acc);
        }
        return JetN(a.basis_, std::move(out));
    }

    friend JetN operator/(const JetN& a, const JetN& b) {
        a.check(b);
        const Scalar b0 = b.c_[0];
        if (b0 == Scalar(0)) throw DomainError("division by a jet with zero constant term");
        const int r = a.order();
        Coeffs q = Coeffs::Zero(a.c_.size());
        for (int n = 0; n <= r; ++n) {
            Homogeneous acc = a.zero_block(n);
            for (int j = 0; j < n; ++j) a.accumulate(acc, n, Scalar(1), q, j, b.c_, n - j);
            a.store(q, n, (a.block(a.c_, n) - acc) / b0);
        }
        return JetN(a.basis_, std::move(q));
    }
    friend JetN operator/(const JetN& a, Scalar s) { return a / JetN::constant(a.basis_, s); }
    friend JetN operator/(Scalar s, const JetN& b) { return JetN::constant(b.basis_, s) / b; }

    friend JetN exp(const JetN& a) {
        const int r = a.order();
        Coeffs e = Coeffs::Zero(a.c_.size());
        e[0] = std::exp(a.c_[0]);
        for (int n = 1; n <= r; ++n) {
            Homogeneous acc = a.zero_block(n);
            for (int j = 1; j <= n; ++j) a.accumulate(acc, n, Scalar(j), a.c_, j, e, n - j);
            a.store(e, n, acc / Scalar(n));
        }
        return JetN(a.basis_, std::move(e));
    }

    friend JetN log(const JetN& a) {
        const Scalar a0 = a.c_[0];
        if (!(a0 > Scalar(0))) throw DomainError("log of non-positive constant term " + format_roundtrip(a0));
        const int r = a.order();
        Coeffs l = Coeffs::Zero(a.c_.size());
        l[0] = std::log(a0);
        for (int n = 1; n <= r; ++n) {
            Homogeneous acc = a.zero_block(n);
            for (int j = 1; j < n; ++j) a.accumulate(acc, n, Scalar(j), l, j, a.c_, n - j);
            a.store(l, n, (a.block(a.c_, n) - acc / Scalar(n)) / a0);
        }
        return JetN(a.basis_, std::move(l));
    }

    friend std::pair<JetN, JetN> sincos(const JetN& a) {
        const int r = a.order();
        Coeffs s = Coeffs::Zero(a.c_.size()), c = Coeffs::Zero(a.c_.size());
        s[0] = std::sin(a.c_[0]);
        c[0] = std::cos(a.c_[0]);
        for (int n = 1; n <= r; ++n) {
            Homogeneous acc_s = a.zero_block(n), acc_c = a.zero_block(n);
            for (int j = 1; j <= n; ++j) {
                a.accumulate(acc_s, n, Scalar(j), a.c_, j, c, n - j);
                a.accumulate(acc_c, n, Scalar(j), a.c_, j, s, n - j);
            }
            a.store(s, n, acc_s / Scalar(n));
            a.store(c, n, -(acc_c / Scalar(n)));
        }
        return {JetN(a.basis_, std::move(s)), JetN(a.basis_, std::move(c))};
    }
    friend JetN sin(const JetN& a) { return sincos(a).first; }
    friend JetN cos(const JetN& a) { return sincos(a).second; }

    friend JetN sqrt(const JetN& a) {
        const Scalar a0 = a.c_[0];
        const int r = a.order();
        if (a0 < Scalar(0) || (r >= 1 && a0 == Scalar(0))) {
            throw DomainError("sqrt of constant term " + format_roundtrip(a0) +
                              (a0 == Scalar(0) ? " (not differentiable)" : ""));
        }
        Coeffs s = Coeffs::Zero(a.c_.size());
        s[0] = std::sqrt(a0);
        for (int n = 1; n <= r; ++n) {
            Homogeneous acc = a.zero_block(n);
            for (int j = 1; j < n; ++j) a.accumulate(acc, n, Scalar(1), s, j, s, n - j);
            a.store(s, n, (a.block(a.c_, n) - acc) / (Scalar(2) * s[0]));
        }
        return JetN(a.basis_, std::move(s));
    }

    friend JetN pow(const JetN& a, Scalar p) {
        if (p == std::trunc(p) && std::abs(p) < 1e9) {
            const long n = static_cast<long>(p);
            const JetN one = JetN::constant(a.basis_, Scalar(1));
            if (n >= 0) return int_pow_unsigned(a, static_cast<unsigned long>(n), one);
            return one / int_pow_unsigned(a, static_cast<unsigned long>(-n), one);
        }
        const Scalar a0 = a.c_[0];
        const int r = a.order();
        if (a0 < Scalar(0) || (r >= 1 && a0 == Scalar(0))) {
            throw DomainError("power " + format_roundtrip(p) + " of constant term " + format_roundtrip(a0));
        }
        Coeffs y = Coeffs::Zero(a.c_.size());
        y[0] = std::pow(a0, p);
        for (int n = 1; n <= r; ++n) {
            Homogeneous acc = a.zero_block(n);
            for (int j = 1; j <= n; ++j) a.accumulate(acc, n, p * Scalar(j) - Scalar(n - j), a.c_, j, y, n - j);
            a.store(y, n, acc / (Scalar(n) * a0));
        }
        return JetN(a.basis_, std::move(y));
    }

private:
    using Homogeneous = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    int locate(const MultiIndex& l) const {
        const int i = basis_->find(l);
        if (i < 0) throw ArgumentError("multi-index " + to_string(l) + " is not stored in this jet");
        return i;
    }

    void check(const JetN& o) const {
        if (o.basis_ != basis_ && (o.dim() != dim() || o.order() != order())) {
            throw ArgumentError("JetN shape mismatch");
        }
    }

    Homogeneous zero_block(int degree) const { return Homogeneous::Zero(basis_->block_size(degree)); }

    Homogeneous block(const Coeffs& c, int degree) const {
        return c.segment(basis_->block_offset(degree), basis_->block_size(degree));
    }

    void store(Coeffs& c, int degree, const Homogeneous& values) const {
        c.segment(basis_->block_offset(degree), basis_->block_size(degree)) = values;
    }

    // acc += (scale * x_i) (x) y_j, the homogeneous product of degree i + j = n.
    void accumulate(Homogeneous& acc, int n, Scalar scale, const Coeffs& x, int i, const Coeffs& y, int j) const {
        const int offset = basis_->block_offset(n);
        for (const auto& t : basis_->product(i, j)) acc[t.out - offset] += (scale * x[t.a]) * y[t.b];
    }

    BasisPtr basis_;
    Coeffs c_;
};

using MultiJet = JetN<double>;

}  // namespace compose_approx
