#pragma once

// Exact slice rank of small order-3 tensors.
//
// T has slice rank <= a + b + c iff there are subspaces W1, W2, W3 of F_q^N of
// dimensions a, b, c with T in W1(x)V(x)V + V(x)W2(x)V + V(x)V(x)W3, which holds
// iff T vanishes on U1 x U2 x U3 for the annihilators U_i = W_i^perp. For fixed
// U1, U2 the best U3 is the annihilator of the span S of the contractions
// T(u, v, .), so
//
//   srank(T) = min over U1, U2 of codim U1 + codim U2 + rank S(U1, U2).

#include "capslice/error.hpp"
#include "capslice/field.hpp"
#include "capslice/tensor.hpp"

#include <cstdint>
#include <vector>

namespace capslice {

namespace detail {

using Vec = std::vector<Residue>;

struct Subspace {
    int dim = 0;
    std::vector<Vec> basis;
};

/// Every subspace of F_q^N, one per reduced row echelon basis.
inline std::vector<Subspace> all_subspaces(const FieldCtx& f, int dim)
{
    std::vector<Subspace> out;
    const int q = f.q();
    for (unsigned mask = 0; mask < (1U << dim); ++mask) {
        std::vector<int> pivots;
        for (int c = 0; c < dim; ++c)
            if (mask & (1U << c))
                pivots.push_back(c);
        // free slots: (row, column) right of the row's pivot, outside pivot columns
        std::vector<std::pair<int, int>> slots;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            for (int c = pivots[r] + 1; c < dim; ++c)
                if (!(mask & (1U << c)))
                    slots.emplace_back(static_cast<int>(r), c);
        std::vector<int> values(slots.size(), 0);
        while (true) {
            Subspace s;
            s.dim = static_cast<int>(pivots.size());
            s.basis.assign(pivots.size(), Vec(static_cast<std::size_t>(dim), 0));
            for (std::size_t r = 0; r < pivots.size(); ++r)
                s.basis[r][pivots[r]] = 1;
            for (std::size_t k = 0; k < slots.size(); ++k)
                s.basis[slots[k].first][slots[k].second] = static_cast<Residue>(values[k]);
            out.push_back(std::move(s));

            std::size_t k = 0;
            while (k < values.size() && ++values[k] == q)
                values[k++] = 0;
            if (k == values.size())
                break;
        }
    }
    return out;
}

inline int rank_of(const FieldCtx& f, std::vector<Vec> rows)
{
    int rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t pivot = static_cast<std::size_t>(rank);
        while (pivot < rows.size() && rows[pivot][c] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[pivot], rows[static_cast<std::size_t>(rank)]);
        const Vec& p = rows[static_cast<std::size_t>(rank)];
        const Residue scale = f.inv(p[c]);
        for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0)
                continue;
            const Residue m = f.mul(rows[r][c], scale);
            for (std::size_t k = c; k < cols; ++k)
                rows[r][k] = f.sub(rows[r][k], f.mul(m, p[k]));
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

/// True when q^(N^2) <= 2^20, the size range accepted by slice_rank_exact_small.
inline bool slice_rank_feasible(int q, std::size_t dim) noexcept
{
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < dim * dim; ++i) {
        size *= static_cast<std::uint64_t>(q);
        if (size > (std::uint64_t{1} << 20))
            return false;
    }
    return true;
}

inline int slice_rank_exact_small(const SparseTensor& t)
{
    if (t.order() != 3)
        throw Error(ErrorCode::InvalidArgument, "exact slice rank is only implemented for order 3");
    if (!slice_rank_feasible(t.q(), t.dim()))
        throw Error(ErrorCode::TooLarge,
            "q^(N^2) exceeds 2^20 for N=" + std::to_string(t.dim()) + ", q=" + std::to_string(t.q()));
    if (t.is_zero())
        return 0;

    const FieldCtx f = make_field(t.q());
    const int dim = static_cast<int>(t.dim());
    const auto spaces = detail::all_subspaces(f, dim);

    int best = dim;
    for (const auto& u1 : spaces) {
        for (const auto& u2 : spaces) {
            const int base = (dim - u1.dim) + (dim - u2.dim);
            if (base >= best)
                continue;
            std::vector<detail::Vec> contractions;
            contractions.reserve(static_cast<std::size_t>(u1.dim * u2.dim));
            for (const auto& u : u1.basis)
                for (const auto& v : u2.basis) {
                    detail::Vec w(static_cast<std::size_t>(dim), 0);
                    for (const auto& [alpha, c] : t.entries()) {
                        const Residue coef = f.mul(c, f.mul(u[alpha[0]], v[alpha[1]]));
                        w[alpha[2]] = f.add(w[alpha[2]], coef);
                    }
                    contractions.push_back(std::move(w));
                }
            best = std::min(best, base + detail::rank_of(f, std::move(contractions)));
        }
    }
    return best;
}

} // namespace capslice
