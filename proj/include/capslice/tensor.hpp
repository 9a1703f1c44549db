#pragma once

#include "capslice/ap_analysis.hpp"
#include "capslice/error.hpp"
#include "capslice/field.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace capslice {

using Index = std::uint32_t;
using IndexTuple = std::vector<Index>;

/// Order-d tensor over F_q on [N]^d, stored as its nonzero coefficients.
/// Indices are 0-based here; index i is the i-th point of the source set in
/// code order.
class SparseTensor {
public:
    SparseTensor(int q, int order, std::size_t dim)
        : q_(q)
        , order_(order)
        , dim_(dim)
    {
        make_field(q);
        if (order < 2)
            throw Error(ErrorCode::InvalidArgument, "tensor order must be at least 2");
    }

    int q() const noexcept { return q_; }
    int order() const noexcept { return order_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::map<IndexTuple, Residue>& entries() const noexcept { return entries_; }
    std::size_t nonzeros() const noexcept { return entries_.size(); }
    bool is_zero() const noexcept { return entries_.empty(); }

    Residue at(const IndexTuple& alpha) const
    {
        auto it = entries_.find(alpha);
        return it == entries_.end() ? Residue{0} : it->second;
    }

    /// Stores c_alpha (reduced mod q); a zero value erases the entry.
    void set(IndexTuple alpha, long long value)
    {
        if (alpha.size() != static_cast<std::size_t>(order_))
            throw Error(ErrorCode::DimensionMismatch, "index tuple of wrong length");
        for (auto i : alpha)
            if (i >= dim_)
                throw Error(ErrorCode::OutOfRange, "tensor index " + std::to_string(i) + " >= N");
        long long r = value % q_;
        if (r < 0)
            r += q_;
        if (r == 0)
            entries_.erase(alpha);
        else
            entries_[std::move(alpha)] = static_cast<Residue>(r);
    }

    friend bool operator==(const SparseTensor&, const SparseTensor&) = default;

private:
    int q_;
    int order_;
    std::size_t dim_;
    std::map<IndexTuple, Residue> entries_;
};

inline bool is_diagonal_tuple(const IndexTuple& alpha) noexcept
{
    return std::adjacent_find(alpha.begin(), alpha.end(), std::not_equal_to<>{}) == alpha.end();
}

/// Solution tensor of ax + by + cz = 0 on A: c_alpha = 1 exactly when
/// (A[alpha_1], A[alpha_2], A[alpha_3]) solves the equation.
inline SparseTensor ap_tensor(const PointSet& set, const CoeffTriple& t)
{
    if (t.q != set.q())
        throw Error(ErrorCode::FieldMismatch, "coefficient field differs from the set's field");
    const FieldCtx f = make_field(set.q());
    const int n = set.n();
    const auto digits = set.digit_matrix();
    const detail::ThirdPoint third(f, t.a, t.b, t.c, n);
    SparseTensor tensor(set.q(), 3, set.size());
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = 0; j < set.size(); ++j) {
            const auto k = set.index_of(third(digits.data() + i * n, digits.data() + j * n));
            if (k < set.size())
                tensor.set({static_cast<Index>(i), static_cast<Index>(j), static_cast<Index>(k)}, 1);
        }
    return tensor;
}

namespace detail {

inline std::vector<bool> membership(const SparseTensor& t, std::span<const std::size_t> subset)
{
    std::vector<bool> in(t.dim(), false);
    for (auto i : subset) {
        if (i >= t.dim())
            throw Error(ErrorCode::OutOfRange, "index " + std::to_string(i) + " outside the tensor");
        in[i] = true;
    }
    return in;
}

} // namespace detail

/// Independence with a nonzero-diagonal requirement: every nonzero c_alpha
/// with alpha in I^d is diagonal, and c_(i,...,i) != 0 for each i in I.
inline bool independent_set_check(const SparseTensor& t, std::span<const std::size_t> subset)
{
    const auto in = detail::membership(t, subset);
    for (const auto& [alpha, c] : t.entries()) {
        if (is_diagonal_tuple(alpha))
            continue;
        if (std::all_of(alpha.begin(), alpha.end(), [&](Index i) { return in[i]; }))
            return false;
    }
    for (auto i : subset)
        if (t.at(IndexTuple(static_cast<std::size_t>(t.order()), static_cast<Index>(i))) == 0)
            return false;
    return true;
}

/// |I| as a lower bound on the slice rank of t. The restriction of t to an
/// independent I is diagonal with nonzero diagonal, whose slice rank is |I|,
/// and restriction cannot raise slice rank.
inline std::size_t diagonal_rank_certificate(const SparseTensor& t, std::span<const std::size_t> subset)
{
    if (!independent_set_check(t, subset))
        throw Error(ErrorCode::NotIndependent, "index set is not independent for the tensor");
    std::vector<std::size_t> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

/// Restriction to the given indices, renumbered in ascending order.
inline SparseTensor restrict_tensor(const SparseTensor& t, std::span<const std::size_t> subset)
{
    std::vector<std::size_t> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Index> renumber(t.dim(), static_cast<Index>(-1));
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (sorted[k] >= t.dim())
            throw Error(ErrorCode::OutOfRange, "index outside the tensor");
        renumber[sorted[k]] = static_cast<Index>(k);
    }
    SparseTensor out(t.q(), t.order(), sorted.size());
    for (const auto& [alpha, c] : t.entries()) {
        IndexTuple beta;
        beta.reserve(alpha.size());
        for (auto i : alpha) {
            if (renumber[i] == static_cast<Index>(-1))
                break;
            beta.push_back(renumber[i]);
        }
        if (beta.size() == alpha.size())
            out.set(std::move(beta), c);
    }
    return out;
}

} // namespace capslice
