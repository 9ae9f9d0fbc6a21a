#pragma once

// Brute-force reference computations used only by the tests. Nothing here
// calls into the library's enumeration or differentiation code.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

/// Number of integer partitions of n: counts nonincreasing part sequences.
inline std::uint64_t partition_count(int n) {
    std::function<std::uint64_t(int, int)> count = [&](int remaining, int max_part) -> std::uint64_t {
        if (remaining == 0) return 1;
        std::uint64_t total = 0;
        for (int part = std::min(remaining, max_part); part >= 1; --part) total += count(remaining - part, part);
        return total;
    };
    return count(n, n);
}

/// Set partitions of {0..n-1} by restricted growth strings, bucketed by block count.
inline std::vector<std::uint64_t> set_partitions_by_blocks(int n) {
    std::vector<std::uint64_t> by_blocks(static_cast<std::size_t>(n + 1), 0);
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> walk = [&](int pos, int blocks) {
        if (pos == n) {
            ++by_blocks[static_cast<std::size_t>(blocks)];
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            rgs[static_cast<std::size_t>(pos)] = b;
            walk(pos + 1, b == blocks ? blocks + 1 : blocks);
        }
    };
    walk(1, 1);  // element 0 always opens block 0
    return by_blocks;
}

/// All (k_1..k_r) with 0 <= k_i <= r and sum i k_i = r, by exhaustive search.
inline std::vector<std::vector<int>> partition_vectors_exhaustive(int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> k(static_cast<std::size_t>(r), 0);
    std::function<void(int)> walk = [&](int i) {
        if (i == r) {
            int s = 0;
            for (int j = 0; j < r; ++j) s += (j + 1) * k[static_cast<std::size_t>(j)];
            if (s == r) out.push_back(k);
            return;
        }
        for (int v = 0; v <= r; ++v) {
            k[static_cast<std::size_t>(i)] = v;
            walk(i + 1);
        }
    };
    walk(0);
    return out;
}

/// Central differences of order 1 and 2 with step h.
inline double central_first(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2 * h);
}
inline double central_second(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}

/// max over a uniform grid of `points` points on [a, b] (endpoints included).
inline double dense_grid_max(const std::function<double(double)>& f, double a, double b, int points) {
    double best = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = a + (b - a) * i / (points - 1);
        best = std::max(best, std::abs(f(x)));
    }
    return best;
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
    const double diff = std::abs(a - b);
    return diff <= abs_floor || diff <= rel * std::max(std::abs(a), std::abs(b));
}

/// Random well-formed expression over the given variable names; every
/// generated function is smooth and finite on the box |y| <= 2.
class ExprGenerator {
public:
    ExprGenerator(std::uint64_t seed, std::vector<std::string> names) : rng_(seed), names_(std::move(names)) {}

    std::string generate(int depth = 3) {
        std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
        switch (pick(rng_)) {
            case 0:
                return constant();
            case 1:
                return variable();
            case 2:
                return "(" + generate(depth - 1) + "+" + generate(depth - 1) + ")";
            case 3:
                return "(" + generate(depth - 1) + "-" + generate(depth - 1) + ")";
            case 4:
                return "(" + generate(depth - 1) + "*" + generate(depth - 1) + ")";
            case 5:
                return "sin(" + generate(depth - 1) + ")";
            case 6:
                return "cos(" + generate(depth - 1) + ")";
            case 7:
                return "exp(0.3*" + bounded(depth - 1) + ")";
            case 8:
                // argument kept inside [1, 3]
                return "log(2+0.5*" + bounded(depth - 1) + ")";
            default:
                return "(" + generate(depth - 1) + ")/(2+" + bounded(depth - 1) + ")";
        }
    }

    /// An expression with values in [-1, 1].
    std::string bounded(int depth) {
        std::uniform_int_distribution<int> pick(0, 1);
        return (pick(rng_) ? "sin(" : "cos(") + generate(depth) + ")";
    }

    std::string constant() {
        std::uniform_int_distribution<int> v(1, 9);
        return "0." + std::to_string(v(rng_));
    }

    std::string variable() {
        std::uniform_int_distribution<std::size_t> v(0, names_.size() - 1);
        return names_[v(rng_)];
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::vector<std::string> names_;
};

}  // namespace oracle
