#pragma once

// Univariate truncated Taylor series. Coefficients are Taylor-normalized:
// c_i = f^(i)(x0) / i!.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "compose_approx/errors.hpp"
#include "compose_approx/numeric.hpp"

namespace compose_approx {

template <typename Scalar>
class Jet1 {
public:
    using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    explicit Jet1(Coeffs coeffs) : c_(std::move(coeffs)) {
        if (c_.size() == 0) throw ArgumentError("a jet needs at least the constant coefficient");
    }

    /// Jet of the identity function at x0.
    static Jet1 lift(Scalar x0, int order) {
        Jet1 j = constant(x0, order);
        if (order >= 1) j.c_[1] = Scalar(1);
        return j;
    }

    static Jet1 constant(Scalar value, int order) {
        if (order < 0) throw ArgumentError("jet order must be nonnegative");
        Coeffs c = Coeffs::Zero(order + 1);
        c[0] = value;
        return Jet1(std::move(c));
    }

    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    Scalar value() const { return c_[0]; }
    Scalar coeff(int i) const { return c_[i]; }
    const Coeffs& coeffs() const noexcept { return c_; }

    /// f^(i)(x0) = i! c_i.
    Scalar derivative(int i) const {
        Scalar scale(1);
        for (int m = 2; m <= i; ++m) scale *= Scalar(m);
        return scale * c_[i];
    }

    std::vector<Scalar> derivatives() const {
        std::vector<Scalar> d(static_cast<std::size_t>(c_.size()));
        Scalar scale(1);
        for (int i = 0; i <= order(); ++i) {
            if (i >= 2) scale *= Scalar(i);
            d[static_cast<std::size_t>(i)] = scale * c_[i];
        }
        return d;
    }

    Jet1 operator-() const { return Jet1(Coeffs(-c_)); }

    Jet1& operator+=(const Jet1& o) {
        check_order(o);
        c_ += o.c_;
        return *this;
    }
    Jet1& operator-=(const Jet1& o) {
        check_order(o);
        c_ -= o.c_;
        return *this;
    }
    Jet1& operator+=(Scalar s) {
        c_[0] += s;
        return *this;
    }
    Jet1& operator*=(Scalar s) {
        c_ *= s;
        return *this;
    }

    friend Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
    friend Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
    friend Jet1 operator+(Jet1 a, Scalar s) { return a += s; }
    friend Jet1 operator+(Scalar s, Jet1 a) { return a += s; }
    friend Jet1 operator-(Jet1 a, Scalar s) { return a += -s; }
    friend Jet1 operator-(Scalar s, const Jet1& a) { return (-a) + s; }
    friend Jet1 operator*(Jet1 a, Scalar s) { return a *= s; }
    friend Jet1 operator*(Scalar s, Jet1 a) { return a *= s; }

    friend Jet1 operator*(const Jet1& a, const Jet1& b) {
        a.check_order(b);
        const int r = a.order();
        Coeffs out(r + 1);
        for (int n = 0; n <= r; ++n) {
            Scalar acc(0);
            for (int j = 0; j <= n; ++j) acc += a.c_[j] * b.c_[n - j];
            out[n] = acc;
        }
        return Jet1(std::move(out));
    }

    friend Jet1 operator/(const Jet1& a, const Jet1& b) {
        a.check_order(b);
        const Scalar b0 = b.c_[0];
        if (b0 == Scalar(0)) throw DomainError("division by a jet with zero constant term");
        const int r = a.order();
        Coeffs q(r + 1);
        for (int n = 0; n <= r; ++n) {
            Scalar acc(0);
            for (int j = 0; j < n; ++j) acc += q[j] * b.c_[n - j];
            q[n] = (a.c_[n] - acc) / b0;
        }
        return Jet1(std::move(q));
    }

    friend Jet1 operator/(const Jet1& a, Scalar s) {
        return a / Jet1::constant(s, a.order());
    }
    friend Jet1 operator/(Scalar s, const Jet1& b) { return Jet1::constant(s, b.order()) / b; }

    friend Jet1 exp(const Jet1& a) {
        const int r = a.order();
        Coeffs e(r + 1);
        e[0] = std::exp(a.c_[0]);
        for (int n = 1; n <= r; ++n) {
            Scalar acc(0);
            for (int j = 1; j <= n; ++j) acc += (Scalar(j) * a.c_[j]) * e[n - j];
            e[n] = acc / Scalar(n);
        }
        return Jet1(std::move(e));
    }

    friend Jet1 log(const Jet1& a) {
        const Scalar a0 = a.c_[0];
        if (!(a0 > Scalar(0))) throw DomainError("log of non-positive constant term " + format_roundtrip(a0));
        const int r = a.order();
        Coeffs l(r + 1);
        l[0] = std::log(a0);
        for (int n = 1; n <= r; ++n) {
            Scalar acc(0);
            for (int j = 1; j < n; ++j) acc += (Scalar(j) * l[j]) * a.c_[n - j];
            l[n] = (a.c_[n] - acc / Scalar(n)) / a0;
        }
        return Jet1(std::move(l));
    }

    friend std::pair<Jet1, Jet1> sincos(const Jet1& a) {
        const int r = a.order();
        Coeffs s(r + 1), c(r + 1);
        s[0] = std::sin(a.c_[0]);
        c[0] = std::cos(a.c_[0]);
        for (int n = 1; n <= r; ++n) {
            Scalar acc_s(0), acc_c(0);
            for (int j = 1; j <= n; ++j) {
                const Scalar ja = Scalar(j) * a.c_[j];
                acc_s += ja * c[n - j];
                acc_c += ja * s[n - j];
            }
            s[n] = acc_s / Scalar(n);
            c[n] = -(acc_c / Scalar(n));
        }
        return {Jet1(std::move(s)), Jet1(std::move(c))};
    }
    friend Jet1 sin(const Jet1& a) { return sincos(a).first; }
    friend Jet1 cos(const Jet1& a) { return sincos(a).second; }

    friend Jet1 sqrt(const Jet1& a) {
        const Scalar a0 = a.c_[0];
        const int r = a.order();
        if (a0 < Scalar(0) || (r >= 1 && a0 == Scalar(0))) {
            throw DomainError("sqrt of constant term " + format_roundtrip(a0) +
                              (a0 == Scalar(0) ? " (not differentiable)" : ""));
        }
        Coeffs s(r + 1);
        s[0] = std::sqrt(a0);
        for (int n = 1; n <= r; ++n) {
            Scalar acc(0);
            for (int j = 1; j < n; ++j) acc += s[j] * s[n - j];
            s[n] = (a.c_[n] - acc) / (Scalar(2) * s[0]);
        }
        return Jet1(std::move(s));
    }

    /// a^p for a constant real exponent. Integer exponents use repeated
    /// multiplication (any base); other exponents need a positive base.
    friend Jet1 pow(const Jet1& a, Scalar p) {
        if (p == std::trunc(p) && std::abs(p) < 1e9) {
            const long n = static_cast<long>(p);
            const Jet1 one = Jet1::constant(Scalar(1), a.order());
            if (n >= 0) return int_pow_unsigned(a, static_cast<unsigned long>(n), one);
            return one / int_pow_unsigned(a, static_cast<unsigned long>(-n), one);
        }
        const Scalar a0 = a.c_[0];
        const int r = a.order();
        if (a0 < Scalar(0) || (r >= 1 && a0 == Scalar(0))) {
            throw DomainError("power " + format_roundtrip(p) + " of constant term " + format_roundtrip(a0));
        }
        Coeffs y(r + 1);
        y[0] = std::pow(a0, p);
        for (int n = 1; n <= r; ++n) {
            Scalar acc(0);
            for (int j = 1; j <= n; ++j) acc += ((p * Scalar(j) - Scalar(n - j)) * a.c_[j]) * y[n - j];
            y[n] = acc / (Scalar(n) * a0);
        }
        return Jet1(std::move(y));
    }

private:
    void check_order(const Jet1& o) const {
        if (o.order() != order()) {
            throw ArgumentError("jet order mismatch: " + std::to_string(order()) + " vs " +
                                std::to_string(o.order()));
        }
    }

    Coeffs c_;
};

/// Jet of f o g at x0, given the jet of f at g(x0) and the jet of g at x0.
template <typename Scalar>
Jet1<Scalar> compose(const Jet1<Scalar>& outer, const Jet1<Scalar>& inner) {
    if (outer.order() != inner.order()) {
        throw ArgumentError("compose: order mismatch " + std::to_string(outer.order()) + " vs " +
                            std::to_string(inner.order()));
    }
    const int r = outer.order();
    const Jet1<Scalar> shift = inner - inner.value();
    Jet1<Scalar> result = Jet1<Scalar>::constant(outer.coeff(r), r);
    for (int k = r - 1; k >= 0; --k) result = result * shift + outer.coeff(k);
    return result;
}

using Jet = Jet1<double>;

}  // namespace compose_approx
