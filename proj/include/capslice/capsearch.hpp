#pragma once

#include "capslice/ap_analysis.hpp"
#include "capslice/error.hpp"
#include "capslice/field.hpp"
#include "capslice/parallel.hpp"
#include "capslice/random.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace capslice {

enum class SearchMode { Exhaustive, BranchAndBound, Random };

struct SearchConfig {
    int q = 3;
    int n = 2;
    CoeffTriple coeffs;
    SearchMode mode = SearchMode::BranchAndBound;
    std::uint64_t seed = 0;
    /// Random-mode passes.
    std::size_t trials = 1000;
    unsigned threads = 1;
};

struct CapResult {
    std::size_t size = 0;
    PointSet witness;
    std::uint64_t nodes = 0;
    /// False for the random heuristic, whose size is only a lower bound.
    bool exact = true;
};

namespace detail {

/// For a pair (u, v) of distinct points of F_q^n, the third points w for
/// which {u, v, w} solves the equation in some arrangement. Nonconstant
/// solutions have three distinct points, so these are exactly the points a
/// cap containing u and v must avoid.
class ConflictTable {
public:
    ConflictTable(int q, int n, const CoeffTriple& t)
        : f_(make_field(q))
        , n_(n)
        , size_(space_size(q, n))
        , pts_(PointSet::full_space(q, n).digit_matrix())
    {
        const std::array<Residue, 3> c{t.a, t.b, t.c};
        // w in slot `free`, u and v in the other two slots, both orders
        for (int free = 0; free < 3; ++free) {
            const Residue k = f_.neg(f_.inv(c[free]));
            for (int swap = 0; swap < 2; ++swap) {
                const int s1 = (free + 1 + swap) % 3, s2 = (free + 2 - swap) % 3;
                scale_[2 * free + swap] = {f_.mul(k, c[s1]), f_.mul(k, c[s2])};
            }
        }
    }

    Code size() const noexcept { return size_; }

    std::array<Code, 6> kills(Code u, Code v) const noexcept
    {
        std::array<Code, 6> out{};
        const Residue* x = pts_.data() + u * static_cast<Code>(n_);
        const Residue* y = pts_.data() + v * static_cast<Code>(n_);
        for (std::size_t k = 0; k < 6; ++k) {
            Code code = 0, place = 1;
            for (int i = 0; i < n_; ++i) {
                code += f_.add(f_.mul(scale_[k][0], x[i]), f_.mul(scale_[k][1], y[i])) * place;
                place *= static_cast<Code>(f_.q());
            }
            out[k] = code;
        }
        return out;
    }

private:
    FieldCtx f_;
    int n_;
    Code size_;
    std::vector<Residue> pts_;
    std::array<std::array<Residue, 2>, 6> scale_{};
};

class CapBranch {
public:
    CapBranch(const ConflictTable& table, bool prune, std::size_t incumbent)
        : table_(table)
        , prune_(prune)
        , best_size_(incumbent)
    {
    }

    void expand(std::vector<Code>& chosen, const std::vector<Code>& cands)
    {
        ++nodes_;
        if (chosen.size() > best_size_) {
            best_size_ = chosen.size();
            best_ = chosen;
        }
        for (std::size_t pos = 0; pos < cands.size(); ++pos) {
            if (prune_ && chosen.size() + (cands.size() - pos) <= best_size_)
                return;
            const Code v = cands[pos];
            std::vector<Code> bad;
            bad.reserve(6 * chosen.size());
            for (Code u : chosen)
                for (Code w : table_.kills(u, v))
                    bad.push_back(w);
            std::sort(bad.begin(), bad.end());
            std::vector<Code> next;
            next.reserve(cands.size() - pos - 1);
            for (std::size_t k = pos + 1; k < cands.size(); ++k)
                if (!std::binary_search(bad.begin(), bad.end(), cands[k]))
                    next.push_back(cands[k]);
            chosen.push_back(v);
            expand(chosen, next);
            chosen.pop_back();
        }
    }

    std::uint64_t nodes() const noexcept { return nodes_; }
    std::size_t best_size() const noexcept { return best_size_; }
    const std::vector<Code>& best() const noexcept { return best_; }

private:
    const ConflictTable& table_;
    bool prune_;
    std::size_t best_size_;
    std::vector<Code> best_;
    std::uint64_t nodes_ = 0;
};

inline std::vector<Code> greedy_cap(const ConflictTable& table, std::span<const Code> order)
{
    std::vector<char> dead(table.size(), 0);
    std::vector<Code> chosen;
    for (Code v : order) {
        if (dead[v])
            continue;
        for (Code u : chosen)
            for (Code w : table.kills(u, v))
                dead[w] = 1;
        chosen.push_back(v);
        dead[v] = 1;
    }
    return chosen;
}

} // namespace detail

/// Largest cap set in F_q^n for the triple, with one witness.
///
/// Branch and bound: each top-level branch (smallest chosen code) is searched
/// independently against the greedy lower bound, so sizes, node counts and
/// witnesses do not depend on the thread count.
inline CapResult max_cap_exact(const SearchConfig& cfg)
{
    if (cfg.coeffs.q != cfg.q)
        throw Error(ErrorCode::FieldMismatch, "coefficient field differs from q");
    const Code size = space_size(cfg.q, cfg.n);
    const Code limit = cfg.mode == SearchMode::Exhaustive ? 100 : 10000;
    if (size > limit)
        throw Error(ErrorCode::TooLarge, "q^n = " + std::to_string(size) + " exceeds " + std::to_string(limit));

    const detail::ConflictTable table(cfg.q, cfg.n, cfg.coeffs);
    std::vector<Code> all(size);
    for (Code c = 0; c < size; ++c)
        all[c] = c;

    CapResult res;
    if (cfg.mode == SearchMode::Random) {
        if (cfg.trials == 0)
            throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
        std::vector<std::vector<Code>> found(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](std::size_t k) {
            Rng rng(derive_seed(cfg.seed, k));
            std::vector<Code> order = all;
            rng.shuffle(std::span(order));
            found[k] = detail::greedy_cap(table, order);
        });
        std::size_t best = 0;
        for (std::size_t k = 1; k < found.size(); ++k)
            if (found[k].size() > found[best].size())
                best = k;
        res.size = found[best].size();
        res.witness = PointSet::from_codes(cfg.q, cfg.n, found[best]);
        res.nodes = cfg.trials;
        res.exact = false;
        return res;
    }

    const bool prune = cfg.mode == SearchMode::BranchAndBound;
    const std::vector<Code> seed_cap = prune ? detail::greedy_cap(table, all) : std::vector<Code>{};
    const std::size_t incumbent = seed_cap.size();

    struct Branch {
        std::size_t size = 0;
        std::vector<Code> best;
        std::uint64_t nodes = 0;
    };
    std::vector<Branch> branches(size);
    parallel_for(size, cfg.threads, [&](std::size_t i) {
        if (prune && size - i <= incumbent)
            return;
        detail::CapBranch search(table, prune, incumbent);
        std::vector<Code> chosen;
        std::vector<Code> rest(all.begin() + static_cast<std::ptrdiff_t>(i) + 1, all.end());
        // first vertex i, then candidates compatible with it (no pair yet)
        chosen.push_back(all[i]);
        search.expand(chosen, rest);
        branches[i] = {search.best_size(), search.best(), search.nodes()};
    });

    res.size = incumbent;
    std::vector<Code> witness = seed_cap;
    res.nodes = 1; // the root
    for (auto& b : branches) {
        res.nodes += b.nodes;
        if (!b.best.empty() && b.size > res.size) {
            res.size = b.size;
            witness = b.best;
        }
    }
    res.witness = PointSet::from_codes(cfg.q, cfg.n, std::move(witness));
    return res;
}

inline CapResult max_cap_exact(int q, int n, const CoeffTriple& t, SearchMode mode = SearchMode::BranchAndBound,
    unsigned threads = 1)
{
    SearchConfig cfg;
    cfg.q = q;
    cfg.n = n;
    cfg.coeffs = t;
    cfg.mode = mode;
    cfg.threads = threads;
    return max_cap_exact(cfg);
}

/// Each point of F_q^n kept independently with probability `density`.
inline PointSet random_subset(int q, int n, double density, std::uint64_t seed)
{
    if (!(density >= 0.0 && density <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "density must lie in [0, 1]");
    const Code size = space_size(q, n);
    Rng rng(seed);
    std::vector<Code> codes;
    for (Code c = 0; c < size; ++c)
        if (rng.unit() < density)
            codes.push_back(c);
    return PointSet::from_codes(q, n, std::move(codes));
}

struct PlantedSet {
    PointSet set;
    double achieved_fraction = 0;
    std::size_t removed = 0;
};

inline double light_fraction(const DegreeProfile& p, double eps)
{
    if (p.set.empty())
        return 0.0;
    return static_cast<double>(light_set(p, eps).size()) / static_cast<double>(p.set.size());
}

/// Removes the point of largest d_x (lowest code on ties) until the fraction
/// of points with fewer than |A|^eps solution pairs reaches `target`.
inline PlantedSet planted_light_set(const PointSet& start, const CoeffTriple& t, double target, double eps = 0.5,
    std::size_t max_removals = static_cast<std::size_t>(-1))
{
    if (!(target >= 0.0 && target <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "target fraction must lie in [0, 1]");
    PlantedSet out{start, 0.0, 0};
    while (true) {
        if (out.set.empty())
            throw Error(ErrorCode::Infeasible, "set emptied before reaching light fraction " + std::to_string(target));
        const auto profile = degree_profile(out.set, t);
        out.achieved_fraction = light_fraction(profile, eps);
        if (out.achieved_fraction >= target)
            return out;
        if (out.removed >= max_removals)
            throw Error(ErrorCode::Infeasible, "removal budget exhausted at light fraction "
                    + std::to_string(out.achieved_fraction));
        const auto top = std::max_element(profile.degrees.begin(), profile.degrees.end()) - profile.degrees.begin();
        std::vector<Code> codes = out.set.codes();
        codes.erase(codes.begin() + top);
        out.set = PointSet::from_codes(out.set.q(), out.set.n(), std::move(codes));
        ++out.removed;
    }
}

inline PlantedSet planted_light_set(int q, int n, const CoeffTriple& t, double target, std::uint64_t seed,
    double density = 1.0)
{
    return planted_light_set(random_subset(q, n, density, seed), t, target);
}

} // namespace capslice
