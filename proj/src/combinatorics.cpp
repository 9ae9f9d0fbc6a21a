#include "compose_approx/combinatorics.hpp"

#include <numeric>
#include <string>

#include "compose_approx/errors.hpp"
#include "compose_approx/numeric.hpp"

namespace compose_approx {

namespace {

constexpr int kFactorialTable = 171;

const std::vector<BigInt>& factorial_table() {
    static const std::vector<BigInt> table = [] {
        std::vector<BigInt> t(kFactorialTable);
        t[0] = 1;
        for (int i = 1; i < kFactorialTable; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table;
}

void check_order(int r, const EnumerationLimits& limits) {
    if (r < 1) throw ArgumentError("order must be positive, got " + std::to_string(r));
    if (r > limits.max_order) {
        throw ResourceLimitError("order " + std::to_string(r) + " exceeds the enumeration cap max_order=" +
                                 std::to_string(limits.max_order));
    }
}

void partitions_from(int i, int remaining, std::vector<int>& counts,
                     const std::function<void(const PartitionVector&)>& visit) {
    const int r = static_cast<int>(counts.size());
    if (i > r) {
        if (remaining == 0) visit(PartitionVector(counts));
        return;
    }
    for (int k = remaining / i; k >= 0; --k) {
        const int rest = remaining - i * k;
        // parts still available are i+1..r, so a positive rest below i+1 is a dead end
        if (rest != 0 && rest < i + 1) continue;
        counts[static_cast<std::size_t>(i - 1)] = k;
        partitions_from(i + 1, rest, counts, visit);
    }
    counts[static_cast<std::size_t>(i - 1)] = 0;
}

// Compositions of `total` into `parts` nonnegative parts, descending lexicographic.
void compositions(int total, int parts, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        current.push_back(total);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int first = total; first >= 0; --first) {
        current.push_back(first);
        compositions(total - first, parts - 1, current, out);
        current.pop_back();
    }
}

}  // namespace

PartitionVector::PartitionVector(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw ArgumentError("partition vector must have positive order");
    long weighted = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] < 0) throw ArgumentError("partition vector entries must be nonnegative");
        weighted += static_cast<long>(i + 1) * counts_[i];
        blocks_ += counts_[i];
    }
    if (weighted != static_cast<long>(counts_.size())) {
        throw ArgumentError("partition vector weighted sum " + std::to_string(weighted) + " differs from order " +
                            std::to_string(counts_.size()));
    }
}

CompositionMatrix::CompositionMatrix(PartitionVector base, int dim, std::vector<int> entries)
    : base_(std::move(base)), dim_(dim), entries_(std::move(entries)) {
    if (dim_ < 1) throw ArgumentError("composition matrix needs at least one column");
    if (entries_.size() != static_cast<std::size_t>(base_.order() * dim_)) {
        throw ArgumentError("composition matrix has wrong entry count");
    }
    for (int i = 1; i <= base_.order(); ++i) {
        int row = 0;
        for (int j = 1; j <= dim_; ++j) {
            if (q(i, j) < 0) throw ArgumentError("composition matrix entries must be nonnegative");
            row += q(i, j);
        }
        if (row != base_.count(i)) {
            throw ArgumentError("row " + std::to_string(i) + " of composition matrix does not sum to k_i");
        }
    }
}

std::vector<int> CompositionMatrix::column_sums() const {
    std::vector<int> p(static_cast<std::size_t>(dim_), 0);
    for (int i = 1; i <= order(); ++i)
        for (int j = 1; j <= dim_; ++j) p[static_cast<std::size_t>(j - 1)] += q(i, j);
    return p;
}

BigInt factorial(int n) {
    if (n < 0) throw ArgumentError("factorial of negative number");
    const auto& table = factorial_table();
    if (n < kFactorialTable) return table[static_cast<std::size_t>(n)];
    BigInt result = table.back();
    for (int i = kFactorialTable; i <= n; ++i) result *= i;
    return result;
}

void for_each_partition_vector(int r, const std::function<void(const PartitionVector&)>& visit,
                               const EnumerationLimits& limits) {
    check_order(r, limits);
    std::vector<int> counts(static_cast<std::size_t>(r), 0);
    partitions_from(1, r, counts, visit);
}

std::vector<PartitionVector> enumerate_partition_vectors(int r, const EnumerationLimits& limits) {
    std::vector<PartitionVector> out;
    for_each_partition_vector(r, [&](const PartitionVector& p) { out.push_back(p); }, limits);
    return out;
}

BigInt composition_matrix_count(const PartitionVector& p, int n) {
    if (n < 1) throw ArgumentError("outer dimension must be positive");
    BigInt total = 1;
    for (int k : p.counts()) total *= multinomial(k + n - 1, std::vector<int>{k, n - 1});
    return total;
}

void for_each_composition_matrix(const PartitionVector& p, int n,
                                 const std::function<void(const CompositionMatrix&)>& visit,
                                 const EnumerationLimits& limits) {
    const BigInt count = composition_matrix_count(p, n);
    if (count > limits.max_matrices) {
        throw ResourceLimitError("composition matrix count " + count.str() + " exceeds the cap max_matrices=" +
                                 std::to_string(limits.max_matrices));
    }
    const int r = p.order();
    std::vector<std::vector<std::vector<int>>> rows(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        std::vector<int> scratch;
        compositions(p.counts()[static_cast<std::size_t>(i)], n, scratch, rows[static_cast<std::size_t>(i)]);
    }
    // odometer over the per-row choices, row 1 most significant
    std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
    std::vector<int> entries(static_cast<std::size_t>(r * n));
    while (true) {
        for (int i = 0; i < r; ++i) {
            const auto& row = rows[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
            std::copy(row.begin(), row.end(), entries.begin() + i * n);
        }
        visit(CompositionMatrix(p, n, entries));
        int i = r - 1;
        while (i >= 0) {
            auto& slot = pick[static_cast<std::size_t>(i)];
            if (++slot < rows[static_cast<std::size_t>(i)].size()) break;
            slot = 0;
            --i;
        }
        if (i < 0) break;
    }
}

std::vector<CompositionMatrix> enumerate_composition_matrices(const PartitionVector& p, int n,
                                                              const EnumerationLimits& limits) {
    std::vector<CompositionMatrix> out;
    for_each_composition_matrix(p, n, [&](const CompositionMatrix& q) { out.push_back(q); }, limits);
    return out;
}

BigInt partition_coefficient(const PartitionVector& p) {
    BigInt denom = 1;
    for (int i = 1; i <= p.order(); ++i) {
        const int k = p.count(i);
        if (k == 0) continue;
        denom *= factorial(k) * boost::multiprecision::pow(factorial(i), static_cast<unsigned>(k));
    }
    return factorial(p.order()) / denom;
}

BigInt composition_coefficient(const CompositionMatrix& q) {
    BigInt denom = 1;
    for (int i = 1; i <= q.order(); ++i) {
        for (int j = 1; j <= q.dim(); ++j) denom *= factorial(q.q(i, j));
        const int k = q.base().count(i);
        if (k > 0) denom *= boost::multiprecision::pow(factorial(i), static_cast<unsigned>(k));
    }
    return factorial(q.order()) / denom;
}

double incomplete_bell(int r, int k, std::span<const double> x, const EnumerationLimits& limits) {
    check_order(r, limits);
    if (k < 1 || k > r) {
        throw ArgumentError("incomplete Bell polynomial needs 1 <= k <= r, got r=" + std::to_string(r) +
                            " k=" + std::to_string(k));
    }
    const std::size_t expected = static_cast<std::size_t>(r - k + 1);
    if (x.size() != expected) {
        throw ArgumentError("incomplete Bell polynomial B_{" + std::to_string(r) + "," + std::to_string(k) +
                            "} takes " + std::to_string(expected) + " arguments, got " +
                            std::to_string(x.size()));
    }
    KahanSum sum;
    for_each_partition_vector(
        r,
        [&](const PartitionVector& p) {
            if (p.blocks() != k) return;
            double term = to_double(partition_coefficient(p));
            for (std::size_t i = 0; i < expected; ++i) term *= int_pow(x[i], p.counts()[i]);
            sum.add(term);
        },
        limits);
    return sum.value();
}

BigInt incomplete_bell_ones(int r, int k, const EnumerationLimits& limits) {
    check_order(r, limits);
    if (k < 1 || k > r) throw ArgumentError("incomplete Bell polynomial needs 1 <= k <= r");
    BigInt total = 0;
    for_each_partition_vector(
        r,
        [&](const PartitionVector& p) {
            if (p.blocks() == k) total += partition_coefficient(p);
        },
        limits);
    return total;
}

BigInt bell_number(int r, const EnumerationLimits& limits) {
    check_order(r, limits);
    std::vector<BigInt> by_blocks(static_cast<std::size_t>(r + 1), 0);
    for_each_partition_vector(
        r, [&](const PartitionVector& p) { by_blocks[static_cast<std::size_t>(p.blocks())] += partition_coefficient(p); },
        limits);
    return std::accumulate(by_blocks.begin(), by_blocks.end(), BigInt(0));
}

BigInt stirling2(int n, int k) {
    if (n < 0 || k < 0) throw ArgumentError("Stirling numbers need nonnegative arguments");
    if (k > n) return 0;
    std::vector<BigInt> row(static_cast<std::size_t>(k + 1), 0);
    row[0] = 1;
    for (int m = 1; m <= n; ++m) {
        for (int j = std::min(m, k); j >= 1; --j) {
            row[static_cast<std::size_t>(j)] = j * row[static_cast<std::size_t>(j)] + row[static_cast<std::size_t>(j - 1)];
        }
        row[0] = 0;
    }
    return row[static_cast<std::size_t>(k)];
}

BigInt multinomial(int k, std::span<const int> parts) {
    if (k < 0) throw ArgumentError("multinomial needs nonnegative k");
    long sum = 0;
    BigInt denom = 1;
    for (int part : parts) {
        if (part < 0) throw ArgumentError("multinomial parts must be nonnegative");
        sum += part;
        denom *= factorial(part);
    }
    if (sum != k) {
        throw ArgumentError("multinomial parts sum to " + std::to_string(sum) + ", expected " + std::to_string(k));
    }
    return factorial(k) / denom;
}

double to_double(const BigInt& value) { return value.convert_to<double>(); }

}  // namespace compose_approx
