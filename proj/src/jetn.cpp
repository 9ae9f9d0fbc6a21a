#include "compose_approx/jetn.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace compose_approx {

namespace {

void graded_block(int total, int parts, MultiIndex& current, std::vector<MultiIndex>& out) {
    if (parts == 1) {
        current.push_back(total);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int first = total; first >= 0; --first) {
        current.push_back(first);
        graded_block(total - first, parts - 1, current, out);
        current.pop_back();
    }
}

}  // namespace

std::string to_string(const MultiIndex& index) {
    std::string s = "(";
    for (std::size_t i = 0; i < index.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(index[i]);
    }
    return s + ")";
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int dim, int order, const JetLimits& limits) {
    if (dim < 1) throw ArgumentError("JetN dimension must be positive");
    if (order < 0) throw ArgumentError("JetN order must be nonnegative");
    if (dim > limits.max_dim || order > limits.max_order) {
        throw ResourceLimitError("multivariate jet of dimension " + std::to_string(dim) + " and order " +
                                 std::to_string(order) + " exceeds the cap (dim <= " +
                                 std::to_string(limits.max_dim) + ", order <= " + std::to_string(limits.max_order) +
                                 ")");
    }
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{dim, order}];
    if (!slot) slot = std::make_shared<const MonomialBasis>(dim, order);
    return slot;
}

MonomialBasis::MonomialBasis(int dim, int order) : dim_(dim), order_(order) {
    offsets_.push_back(0);
    for (int d = 0; d <= order; ++d) {
        MultiIndex scratch;
        graded_block(d, dim, scratch, indices_);
        offsets_.push_back(static_cast<int>(indices_.size()));
    }
    for (std::size_t i = 0; i < indices_.size(); ++i) positions_.emplace(indices_[i], static_cast<int>(i));
    weights_.reserve(indices_.size());
    for (const auto& l : indices_) {
        double w = 1.0;
        for (int e : l)
            for (int m = 2; m <= e; ++m) w *= m;
        weights_.push_back(w);
    }
    products_.resize(static_cast<std::size_t>((order + 1) * (order + 1)));
    MultiIndex sum(static_cast<std::size_t>(dim));
    for (int i = 0; i <= order; ++i) {
        for (int j = 0; i + j <= order; ++j) {
            auto& terms = products_[static_cast<std::size_t>(i * (order + 1) + j)];
            for (int a = offsets_[i]; a < offsets_[i + 1]; ++a) {
                for (int b = offsets_[j]; b < offsets_[j + 1]; ++b) {
                    for (int v = 0; v < dim; ++v) sum[v] = indices_[a][v] + indices_[b][v];
                    terms.push_back({a, b, find(sum)});
                }
            }
        }
    }
}

int MonomialBasis::find(const MultiIndex& l) const {
    if (static_cast<int>(l.size()) != dim_) return -1;
    int degree = 0;
    for (int e : l) {
        if (e < 0) return -1;
        degree += e;
    }
    if (degree > order_) return -1;
    const auto it = positions_.find(l);
    return it == positions_.end() ? -1 : it->second;
}

}  // namespace compose_approx
