#pragma once

// Exact enumeration of the partition structures behind the Faa di Bruno
// expansions, plus Bell polynomials, Bell/Stirling numbers and multinomials.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace compose_approx {

using BigInt = boost::multiprecision::cpp_int;

struct EnumerationLimits {
    int max_order = 64;
    std::size_t max_matrices = 10'000'000;
};

/// Multiplicities (k_1, ..., k_r) of a partition of r: sum of i * k_i equals r.
class PartitionVector {
public:
    /// Validates the weighted-sum invariant; throws ArgumentError otherwise.
    explicit PartitionVector(std::vector<int> counts);

    int order() const noexcept { return static_cast<int>(counts_.size()); }
    /// k_i for i in 1..r.
    int count(int i) const { return counts_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<int>& counts() const noexcept { return counts_; }
    /// Number of blocks k = k_1 + ... + k_r.
    int blocks() const noexcept { return blocks_; }

    friend bool operator==(const PartitionVector&, const PartitionVector&) = default;

private:
    std::vector<int> counts_;
    int blocks_ = 0;
};

/// Distribution q_ij of each k_i over n coordinates (row sums equal k_i).
class CompositionMatrix {
public:
    CompositionMatrix(PartitionVector base, int dim, std::vector<int> entries);

    const PartitionVector& base() const noexcept { return base_; }
    int order() const noexcept { return base_.order(); }
    int dim() const noexcept { return dim_; }
    /// q_ij with 1-based i (row, derivative order) and j (column, coordinate).
    int q(int i, int j) const {
        return entries_.at(static_cast<std::size_t>((i - 1) * dim_ + (j - 1)));
    }
    const std::vector<int>& entries() const noexcept { return entries_; }
    /// p_j = q_1j + ... + q_rj for j = 1..n.
    std::vector<int> column_sums() const;

private:
    PartitionVector base_;
    int dim_;
    std::vector<int> entries_;
};

BigInt factorial(int n);

/// Calls `visit` for every partition vector of r in descending lexicographic order.
void for_each_partition_vector(int r, const std::function<void(const PartitionVector&)>& visit,
                               const EnumerationLimits& limits = {});

std::vector<PartitionVector> enumerate_partition_vectors(int r, const EnumerationLimits& limits = {});

/// Number of composition matrices over `p` with n columns: prod_i C(k_i + n - 1, n - 1).
BigInt composition_matrix_count(const PartitionVector& p, int n);

void for_each_composition_matrix(const PartitionVector& p, int n,
                                 const std::function<void(const CompositionMatrix&)>& visit,
                                 const EnumerationLimits& limits = {});

std::vector<CompositionMatrix> enumerate_composition_matrices(const PartitionVector& p, int n,
                                                              const EnumerationLimits& limits = {});

/// r! / (k_1! ... k_r! * prod (i!)^{k_i}): the number of set partitions of an
/// r-set whose block sizes follow `p`.
BigInt partition_coefficient(const PartitionVector& p);

/// r! / (prod_ij q_ij! * prod_i (i!)^{k_i}).
BigInt composition_coefficient(const CompositionMatrix& q);

/// B_{r,k}(x_1, ..., x_{r-k+1}); `x` must have exactly r - k + 1 entries.
double incomplete_bell(int r, int k, std::span<const double> x, const EnumerationLimits& limits = {});

/// B_{r,k}(1, ..., 1) in exact arithmetic.
BigInt incomplete_bell_ones(int r, int k, const EnumerationLimits& limits = {});

BigInt bell_number(int r, const EnumerationLimits& limits = {});

/// Stirling numbers of the second kind by the triangle recurrence.
BigInt stirling2(int n, int k);

/// k! / prod parts_j!; throws ArgumentError when the parts do not sum to k.
BigInt multinomial(int k, std::span<const int> parts);

double to_double(const BigInt& value);

}  // namespace compose_approx
