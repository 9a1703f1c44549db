#pragma once

#include "capslice/parallel.hpp"
#include "capslice/random.hpp"
#include "capslice/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

namespace capslice {

/// Support hypergraph of a tensor on a vertex subset. Edges are the sets of
/// distinct indices of off-diagonal nonzero tuples (sizes 2 and 3 mixed).
/// degrees[k] counts off-diagonal nonzero tuples with first index vertices[k].
struct MixedHypergraph {
    std::vector<std::size_t> vertices;
    std::vector<std::vector<std::size_t>> edges;
    std::vector<std::uint64_t> degrees;
};

inline MixedHypergraph support_hypergraph(const SparseTensor& t, std::span<const std::size_t> subset)
{
    const auto in = detail::membership(t, subset);
    MixedHypergraph h;
    for (std::size_t i = 0; i < t.dim(); ++i)
        if (in[i])
            h.vertices.push_back(i);
    h.degrees.assign(h.vertices.size(), 0);

    std::set<std::vector<std::size_t>> edges;
    for (const auto& [alpha, c] : t.entries()) {
        if (is_diagonal_tuple(alpha))
            continue;
        if (!std::all_of(alpha.begin(), alpha.end(), [&](Index i) { return in[i]; }))
            continue;
        std::vector<std::size_t> e(alpha.begin(), alpha.end());
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        edges.insert(std::move(e));
        const auto pos = std::lower_bound(h.vertices.begin(), h.vertices.end(), alpha[0]) - h.vertices.begin();
        ++h.degrees[static_cast<std::size_t>(pos)];
    }
    h.edges.assign(edges.begin(), edges.end());
    return h;
}

inline MixedHypergraph support_hypergraph(const SparseTensor& t)
{
    std::vector<std::size_t> all(t.dim());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    return support_hypergraph(t, all);
}

/// No edge lies entirely inside `chosen`.
inline bool is_independent(const MixedHypergraph& h, std::span<const std::size_t> chosen)
{
    std::set<std::size_t> in(chosen.begin(), chosen.end());
    return std::none_of(h.edges.begin(), h.edges.end(), [&](const auto& e) {
        return std::all_of(e.begin(), e.end(), [&](std::size_t v) { return in.count(v) > 0; });
    });
}

struct GreedyResult {
    /// Sorted vertex ids.
    std::vector<std::size_t> set;
    std::size_t trial = 0;
};

/// Best of `trials` random-order greedy passes. A vertex joins when no edge
/// through it would become fully chosen. Trial k draws its order from
/// derive_seed(seed, k); ties go to the earliest trial, so the result does
/// not depend on `threads`.
inline GreedyResult caro_wei_greedy(const MixedHypergraph& h, std::size_t trials, std::uint64_t seed,
    unsigned threads = 1)
{
    if (trials == 0)
        throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
    const std::size_t nv = h.vertices.size();
    std::vector<std::vector<std::vector<std::size_t>>> incident(nv);
    auto local = [&](std::size_t v) {
        return static_cast<std::size_t>(std::lower_bound(h.vertices.begin(), h.vertices.end(), v) - h.vertices.begin());
    };
    for (const auto& e : h.edges) {
        std::vector<std::size_t> le;
        for (auto v : e)
            le.push_back(local(v));
        for (auto v : le)
            incident[v].push_back(le);
    }

    std::vector<std::vector<std::size_t>> results(trials);
    parallel_for(trials, threads, [&](std::size_t trial) {
        Rng rng(derive_seed(seed, trial));
        std::vector<std::size_t> order(nv);
        for (std::size_t i = 0; i < nv; ++i)
            order[i] = i;
        rng.shuffle(std::span(order));
        std::vector<char> chosen(nv, 0);
        std::vector<std::size_t> picked;
        for (auto v : order) {
            bool completes = false;
            for (const auto& e : incident[v]) {
                if (std::all_of(e.begin(), e.end(), [&](std::size_t u) { return u == v || chosen[u]; })) {
                    completes = true;
                    break;
                }
            }
            if (!completes) {
                chosen[v] = 1;
                picked.push_back(h.vertices[v]);
            }
        }
        std::sort(picked.begin(), picked.end());
        results[trial] = std::move(picked);
    });

    GreedyResult best;
    for (std::size_t k = 0; k < trials; ++k)
        if (k == 0 || results[k].size() > best.set.size())
            best = {results[k], k};
    return best;
}

/// sum over vertices of (d_x + 1)^(-exponent).
inline double caro_wei_bound(const MixedHypergraph& h, double exponent)
{
    double sum = 0.0;
    for (auto d : h.degrees)
        sum += std::pow(static_cast<double>(d) + 1.0, -exponent);
    return sum;
}

} // namespace capslice
