#pragma once

// Distinct solutions of a_1 x_1 + ... + a_d x_d = 0 inside a set A, built the
// way the multi-variable argument builds them: with prefix sums
// b_k = a_1 + ... + a_k (nonzero after reordering) and auxiliary points
// t_k = b_k^{-1} (a_1 x_1 + ... + a_k x_k), walk the chain
//
//   a_1 x_1 + a_2 x_2               = b_2 t_2
//   b_k t_k + a_{k+1} x_{k+1}       = b_{k+1} t_{k+1}      (2 <= k < d-2)
//   b_{d-2} t_{d-2} + a_{d-1} x_{d-1} + a_d x_d = 0
//
// choosing each x fresh. The first phase demands t_k in A at every step. If
// that phase is exhausted a second phase drops the membership demand on t_k,
// which makes the search complete.

#include "capslice/ap_analysis.hpp"
#include "capslice/error.hpp"
#include "capslice/field.hpp"
#include "capslice/parallel.hpp"
#include "capslice/random.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace capslice {

/// a_1..a_d, all nonzero with zero sum, d >= 4.
struct CoeffVector {
    int q = 3;
    std::vector<Residue> a;

    std::size_t size() const noexcept { return a.size(); }
};

inline CoeffVector make_coeff_vector(int q, std::span<const long long> values)
{
    const FieldCtx f = make_field(q);
    if (values.size() < 4)
        throw Error(ErrorCode::InvalidCoefficients, "need at least 4 coefficients, got " + std::to_string(values.size()));
    CoeffVector c{q, {}};
    Residue sum = 0;
    for (auto v : values) {
        const Residue r = f.reduce(v);
        if (r == 0)
            throw Error(ErrorCode::InvalidCoefficients, "coefficients must be nonzero mod " + std::to_string(q));
        c.a.push_back(r);
        sum = f.add(sum, r);
    }
    if (sum != 0)
        throw Error(ErrorCode::InvalidCoefficients, "coefficients must sum to 0 mod " + std::to_string(q));
    return c;
}

/// b_k for k = 2..d-2 under the order a[perm[0]], a[perm[1]], ...
inline std::vector<Residue> prefix_sums(const CoeffVector& c, std::span<const std::size_t> perm)
{
    const FieldCtx f = make_field(c.q);
    std::vector<Residue> b;
    Residue s = 0;
    for (std::size_t k = 0; k + 2 < perm.size(); ++k) {
        s = f.add(s, c.a[perm[k]]);
        if (k >= 1)
            b.push_back(s);
    }
    return b;
}

inline bool prefix_sums_nonzero(const CoeffVector& c, std::span<const std::size_t> perm)
{
    const auto b = prefix_sums(c, perm);
    return std::none_of(b.begin(), b.end(), [](Residue r) { return r == 0; });
}

/// A reordering with every b_k (2 <= k <= d-2) nonzero: perm[i] is the
/// original position placed i-th. Exhaustive in lexicographic order (so the
/// identity wins when it works) for d <= 8, seeded random restarts above.
inline std::vector<std::size_t> prefix_rearrange(const CoeffVector& c, std::uint64_t seed = 0,
    std::size_t restarts = 100000)
{
    std::vector<std::size_t> perm(c.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (c.size() <= 8) {
        do {
            if (prefix_sums_nonzero(c, perm))
                return perm;
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        if (prefix_sums_nonzero(c, perm))
            return perm;
        Rng rng(seed);
        for (std::size_t r = 0; r < restarts; ++r) {
            rng.shuffle(std::span(perm));
            if (prefix_sums_nonzero(c, perm))
                return perm;
        }
    }
    throw Error(ErrorCode::NoValidRearrangement, "no ordering of the coefficients has nonzero prefix sums b_2..b_{d-2}");
}

enum class ChainStatus { Found, BudgetExhausted, SearchExhausted };

constexpr std::string_view to_string(ChainStatus s) noexcept
{
    switch (s) {
    case ChainStatus::Found: return "found";
    case ChainStatus::BudgetExhausted: return "budget_exhausted";
    case ChainStatus::SearchExhausted: return "search_exhausted";
    }
    return "unknown";
}

struct ChainOptions {
    std::uint64_t budget = 50'000'000;
    unsigned threads = 1;
    /// Report the solution from the lowest seed index regardless of threads.
    bool deterministic = true;
};

struct ChainResult {
    ChainStatus status = ChainStatus::SearchExhausted;
    /// Codes x_1..x_d in the caller's coefficient order.
    std::vector<Code> solution;
    std::uint64_t nodes = 0;
    std::vector<std::size_t> permutation;
    /// Whether every auxiliary t_k of the returned chain lies in A.
    bool auxiliaries_in_set = false;
};

namespace detail {

class ChainSearch {
public:
    ChainSearch(const PointSet& set, const CoeffVector& coeffs, std::vector<std::size_t> perm, unsigned threads)
        : set_(set)
        , f_(make_field(set.q()))
        , n_(set.n())
        , d_(coeffs.size())
        , digits_(set.digit_matrix())
        , perm_(std::move(perm))
    {
        for (auto p : perm_)
            a_.push_back(coeffs.a[p]);
        b_.assign(d_, 0);
        Residue s = 0;
        for (std::size_t k = 0; k < d_; ++k) {
            s = f_.add(s, a_[k]);
            b_[k] = s; // b_[k] is b_{k+1} in 1-based terms
        }
        for (std::size_t k = 1; k + 2 < d_; ++k)
            b_inv_.push_back(f_.inv(b_[k]));

        // weight_[level][i]: solution pairs continuing the chain from t = A[i]
        // at auxiliary level 2 + level.
        for (std::size_t lvl = 1; lvl + 2 < d_; ++lvl) {
            CoeffTriple t;
            if (lvl + 3 < d_)
                t = CoeffTriple{set.q(), b_[lvl], a_[lvl + 1], f_.neg(b_[lvl + 1])};
            else
                t = CoeffTriple{set.q(), b_[lvl], a_[d_ - 2], a_[d_ - 1]};
            weight_.push_back(degree_profile(set, t, threads).degrees);
        }
    }

    std::size_t seed_count() const noexcept { return set_.size() * set_.size(); }

    struct Outcome {
        bool found = false;
        std::uint64_t nodes = 0;
        std::vector<std::size_t> chosen; // indices into A, in search order
    };

    /// Explores one (x_1, x_2) seed using at most `cap` nodes.
    Outcome run_seed(std::size_t seed, std::uint64_t cap, bool strict) const
    {
        Outcome out;
        const std::size_t i = seed / set_.size(), j = seed % set_.size();
        if (i == j)
            return out;
        std::vector<Residue> sum(static_cast<std::size_t>(n_), 0);
        axpy(sum, a_[0], row(i));
        axpy(sum, a_[1], row(j));
        if (strict && !set_.contains(aux_code(sum, 0)))
            return out;
        if (cap == 0)
            return out;
        out.nodes = 1;
        std::vector<std::size_t> chosen{i, j};
        out.found = extend(chosen, sum, cap, strict, out.nodes);
        if (out.found)
            out.chosen = std::move(chosen);
        return out;
    }

    std::vector<Code> to_original_order(const std::vector<std::size_t>& chosen) const
    {
        std::vector<Code> out(d_);
        for (std::size_t k = 0; k < d_; ++k)
            out[perm_[k]] = set_[chosen[k]];
        return out;
    }

    bool aux_in_set(const std::vector<std::size_t>& chosen) const
    {
        std::vector<Residue> sum(static_cast<std::size_t>(n_), 0);
        for (std::size_t k = 0; k + 2 < d_; ++k) {
            axpy(sum, a_[k], row(chosen[k]));
            if (k >= 1 && !set_.contains(aux_code(sum, k - 1)))
                return false;
        }
        return true;
    }

private:
    const Residue* row(std::size_t i) const noexcept { return digits_.data() + i * static_cast<std::size_t>(n_); }

    void axpy(std::vector<Residue>& acc, Residue s, const Residue* x) const noexcept
    {
        for (int c = 0; c < n_; ++c)
            acc[c] = f_.add(acc[c], f_.mul(s, x[c]));
    }

    Code scaled_code(const std::vector<Residue>& v, Residue s) const noexcept
    {
        Code code = 0, place = 1;
        for (int c = 0; c < n_; ++c) {
            code += f_.mul(s, v[c]) * place;
            place *= static_cast<Code>(f_.q());
        }
        return code;
    }

    /// Code of t at auxiliary level `lvl` (t_{lvl+2}) given the prefix sum.
    Code aux_code(const std::vector<Residue>& sum, std::size_t lvl) const noexcept { return scaled_code(sum, b_inv_[lvl]); }

    bool fresh(const std::vector<std::size_t>& chosen, std::size_t x) const noexcept
    {
        return std::find(chosen.begin(), chosen.end(), x) == chosen.end();
    }

#ifndef NDEBUG
    void check_chain(const std::vector<std::size_t>& chosen, const std::vector<Residue>& sum) const
    {
        std::vector<Point> pts;
        std::vector<Residue> scal;
        for (std::size_t k = 0; k < chosen.size(); ++k) {
            pts.push_back(set_.point(chosen[k]));
            scal.push_back(a_[k]);
        }
        const Point lhs = vec_combine(f_, scal, pts);
        const Point t{decode(aux_code(sum, chosen.size() - 2), set_.q(), n_)};
        const Residue bk = b_[chosen.size() - 1];
        const Point rhs = vec_combine(f_, std::vector<Residue>{bk}, std::vector<Point>{t});
        if (!(lhs == rhs))
            throw Error(ErrorCode::InvalidArgument, "chain identity violated");
    }
#endif

    bool extend(std::vector<std::size_t>& chosen, const std::vector<Residue>& sum, std::uint64_t cap, bool strict,
        std::uint64_t& nodes) const
    {
#ifndef NDEBUG
        check_chain(chosen, sum);
#endif
        const std::size_t k = chosen.size();
        const std::size_t size = set_.size();
        if (k + 2 == d_) {
            // close: sum + a_{d-1} x + a_d y = 0
            const Residue s = f_.neg(f_.inv(a_[d_ - 1]));
            for (std::size_t x = 0; x < size; ++x) {
                if (!fresh(chosen, x))
                    continue;
                std::vector<Residue> acc = sum;
                axpy(acc, a_[d_ - 2], row(x));
                const auto y = set_.index_of(scaled_code(acc, s));
                if (y < size && y != x && fresh(chosen, y)) {
                    chosen.push_back(x);
                    chosen.push_back(y);
                    return true;
                }
            }
            return false;
        }

        struct Candidate {
            std::uint64_t weight;
            std::size_t x;
            std::vector<Residue> sum;
        };
        std::vector<Candidate> cands;
        for (std::size_t x = 0; x < size; ++x) {
            if (!fresh(chosen, x))
                continue;
            std::vector<Residue> acc = sum;
            axpy(acc, a_[k], row(x));
            const auto t = set_.index_of(aux_code(acc, k - 1));
            if (strict && t == size)
                continue;
            const std::uint64_t w = t < size ? weight_[k - 1][t] : 0;
            cands.push_back({w, x, std::move(acc)});
        }
        std::stable_sort(cands.begin(), cands.end(), [](const Candidate& l, const Candidate& r) { return l.weight > r.weight; });
        for (auto& c : cands) {
            if (nodes >= cap)
                return false;
            ++nodes;
            chosen.push_back(c.x);
            if (extend(chosen, c.sum, cap, strict, nodes))
                return true;
            chosen.pop_back();
        }
        return false;
    }

    const PointSet& set_;
    FieldCtx f_;
    int n_;
    std::size_t d_;
    std::vector<Residue> digits_;
    std::vector<std::size_t> perm_;
    std::vector<Residue> a_, b_, b_inv_;
    std::vector<std::vector<std::uint64_t>> weight_;
};

struct PhaseResult {
    bool found = false;
    bool budget_hit = false;
    std::uint64_t nodes = 0;
    std::vector<std::size_t> chosen;
};

inline PhaseResult run_phase(const ChainSearch& search, bool strict, std::uint64_t budget, const ChainOptions& opt)
{
    PhaseResult r;
    const std::size_t seeds = search.seed_count();
    const unsigned threads = resolve_threads(opt.threads);

    if (threads <= 1) {
        for (std::size_t s = 0; s < seeds; ++s) {
            const auto o = search.run_seed(s, budget - r.nodes, strict);
            r.nodes += o.nodes;
            if (o.found) {
                r.found = true;
                r.chosen = o.chosen;
                return r;
            }
            if (r.nodes >= budget) {
                r.budget_hit = true;
                return r;
            }
        }
        return r;
    }

    // Every seed below the winning one is fully explored, so folding the
    // per-seed outcomes in seed order replays the sequential search.
    std::vector<std::optional<ChainSearch::Outcome>> outcomes(seeds);
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    std::atomic<bool> any{false};
    parallel_for(seeds, threads, [&](std::size_t s) {
        if (s > best.load() || (!opt.deterministic && any.load()))
            return;
        auto o = search.run_seed(s, budget, strict);
        if (o.found) {
            any = true;
            std::size_t cur = best.load();
            while (s < cur && !best.compare_exchange_weak(cur, s)) {
            }
        }
        outcomes[s] = std::move(o);
    });

    for (std::size_t s = 0; s < seeds; ++s) {
        if (!outcomes[s]) {
            if (opt.deterministic)
                break; // only seeds after the winner are skipped
            continue;
        }
        const auto& o = *outcomes[s];
        const std::uint64_t remaining = budget - r.nodes;
        if (o.nodes > remaining || (!o.found && o.nodes == remaining && remaining > 0 && opt.deterministic)) {
            r.nodes = budget;
            r.budget_hit = true;
            return r;
        }
        r.nodes += o.nodes;
        if (o.found) {
            r.found = true;
            r.chosen = o.chosen;
            return r;
        }
        if (r.nodes >= budget) {
            r.budget_hit = true;
            return r;
        }
    }
    return r;
}

} // namespace detail

/// d pairwise distinct points of A solving sum a_i x_i = 0, or the reason
/// none was produced. Requires |A| >= d and a valid rearrangement.
inline ChainResult find_distinct_solution(const PointSet& set, const CoeffVector& coeffs, const ChainOptions& opt = {})
{
    if (coeffs.q != set.q())
        throw Error(ErrorCode::FieldMismatch, "coefficient field differs from the set's field");
    if (set.size() < coeffs.size())
        throw Error(ErrorCode::TooSmall,
            "|A| = " + std::to_string(set.size()) + " < d = " + std::to_string(coeffs.size()));

    ChainResult result;
    result.permutation = prefix_rearrange(coeffs);
    const detail::ChainSearch search(set, coeffs, result.permutation, opt.threads);

    std::uint64_t used = 0;
    for (bool strict : {true, false}) {
        const auto phase = detail::run_phase(search, strict, opt.budget - used, opt);
        used += phase.nodes;
        if (phase.found) {
            result.status = ChainStatus::Found;
            result.solution = search.to_original_order(phase.chosen);
            result.auxiliaries_in_set = search.aux_in_set(phase.chosen);
            result.nodes = used;
            return result;
        }
        if (phase.budget_hit || used >= opt.budget) {
            result.status = ChainStatus::BudgetExhausted;
            result.nodes = used;
            return result;
        }
    }
    result.status = ChainStatus::SearchExhausted;
    result.nodes = used;
    return result;
}

/// Every tuple of pairwise distinct points of A solving the equation, in
/// lexicographic order of positions, stopping after `limit` (0 = no limit).
inline std::vector<std::vector<Code>> brute_force_solutions(const PointSet& set, const CoeffVector& coeffs,
    std::size_t limit = 0)
{
    if (coeffs.q != set.q())
        throw Error(ErrorCode::FieldMismatch, "coefficient field differs from the set's field");
    const std::size_t d = coeffs.size();
    if (limit == 0) {
        double work = 1.0;
        for (std::size_t k = 0; k < d; ++k)
            work *= static_cast<double>(set.size());
        if (work > 1e8)
            throw Error(ErrorCode::TooLarge, "|A|^d exceeds 1e8 without a limit");
    }
    std::vector<std::vector<Code>> out;
    if (set.size() < d)
        return out;
    const FieldCtx f = make_field(set.q());
    const int n = set.n();
    const auto digits = set.digit_matrix();
    std::vector<std::size_t> idx(d, 0);
    std::vector<std::vector<Residue>> partial(d + 1, std::vector<Residue>(static_cast<std::size_t>(n), 0));

    // depth-first over positions with running partial sums
    auto recurse = [&](auto&& self, std::size_t k) -> bool {
        if (k == d) {
            if (std::all_of(partial[d].begin(), partial[d].end(), [](Residue r) { return r == 0; })) {
                std::vector<Code> sol(d);
                for (std::size_t i = 0; i < d; ++i)
                    sol[i] = set[idx[i]];
                out.push_back(std::move(sol));
                if (limit && out.size() >= limit)
                    return true;
            }
            return false;
        }
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (std::find(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), i) != idx.begin() + static_cast<std::ptrdiff_t>(k))
                continue;
            idx[k] = i;
            const Residue* x = digits.data() + i * static_cast<std::size_t>(n);
            for (int c = 0; c < n; ++c)
                partial[k + 1][c] = f.add(partial[k][c], f.mul(coeffs.a[k], x[c]));
            if (self(self, k + 1))
                return true;
        }
        return false;
    };
    recurse(recurse, 0);
    return out;
}

} // namespace capslice
