#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace compose_approx {

/// Compensated (Kahan-Babuska) accumulator.
class KahanSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// x^n by binary exponentiation; the same routine backs scalar and jet integer powers.
template <typename T>
T int_pow_unsigned(const T& x, unsigned long n, const T& one) {
    T result = one;
    T base = x;
    bool first = true;
    while (n > 0) {
        if (n & 1UL) {
            result = first ? base : result * base;
            first = false;
        }
        n >>= 1UL;
        if (n > 0) base = base * base;
    }
    return result;
}

inline double int_pow(double x, long n) {
    if (n >= 0) return int_pow_unsigned(x, static_cast<unsigned long>(n), 1.0);
    return 1.0 / int_pow_unsigned(x, static_cast<unsigned long>(-n), 1.0);
}

inline std::string format_double(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

/// Shortest %g text (15..17 digits) that parses back to exactly `x`.
inline std::string format_roundtrip(double x) {
    for (int digits = 15; digits < 17; ++digits) {
        std::string s = format_double(x, digits);
        if (std::strtod(s.c_str(), nullptr) == x) return s;
    }
    return format_double(x, 17);
}

}  // namespace compose_approx
