// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include "capslice/capslice.hpp"

#include "cli_cases.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace capslice;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

CoeffTriple random_triple(int q, Rng& rng)
{
    while (true) {
        const auto a = static_cast<long long>(1 + rng.below(static_cast<std::uint64_t>(q - 1)));
        const auto b = static_cast<long long>(1 + rng.below(static_cast<std::uint64_t>(q - 1)));
        if ((a + b) % q != 0)
            return make_triple(q, a, b, -(a + b));
    }
}

/// `size` distinct random points of F_q^n.
PointSet random_points(int q, int n, std::size_t size, Rng& rng)
{
    std::vector<Code> all(space_size(q, n));
    for (Code c = 0; c < all.size(); ++c)
        all[c] = c;
    rng.shuffle(std::span(all));
    all.resize(std::min(size, all.size()));
    return PointSet::from_codes(q, n, std::move(all));
}

CoeffVector random_coeffs(int q, std::size_t d, Rng& rng)
{
    const auto f = make_field(q);
    while (true) {
        std::vector<long long> a;
        Residue sum = 0;
        for (std::size_t i = 0; i + 1 < d; ++i) {
            const auto r = static_cast<Residue>(1 + rng.below(static_cast<std::uint64_t>(q - 1)));
            a.push_back(r);
            sum = f.add(sum, r);
        }
        if (sum == 0)
            continue;
        a.push_back(f.neg(sum));
        return make_coeff_vector(q, a);
    }
}

bool rearrangement_exists(const CoeffVector& c)
{
    std::vector<std::size_t> perm(c.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = i;
    do {
        if (prefix_sums_nonzero(c, perm))
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

bool solves(const PointSet& set, const CoeffVector& c, const std::vector<Code>& sol)
{
    if (sol.size() != c.size() || std::set<Code>(sol.begin(), sol.end()).size() != sol.size())
        return false;
    const auto f = make_field(set.q());
    std::vector<Residue> sum(static_cast<std::size_t>(set.n()), 0);
    for (std::size_t i = 0; i < sol.size(); ++i) {
        if (!set.contains(sol[i]))
            return false;
        const auto d = decode(sol[i], set.q(), set.n());
        for (std::size_t k = 0; k < sum.size(); ++k)
            sum[k] = f.add(sum[k], f.mul(c.a[i], d[k]));
    }
    return std::all_of(sum.begin(), sum.end(), [](Residue r) { return r == 0; });
}

Outcome oracle_equivalence()
{
    Outcome o;
    Rng rng(1001);
    const int qs[] = {3, 5, 7};
    for (int k = 0; k < 200; ++k) {
        const int q = qs[k % 3];
        const int n = 1 + static_cast<int>(rng.below(q == 3 ? 4 : 2));
        const auto cap = std::min<Code>(64, space_size(q, n));
        const auto set = random_points(q, n, static_cast<std::size_t>(rng.below(cap + 1)), rng);
        const auto t = random_triple(q, rng);
        o.require(degree_profile(set, t).degrees == oracle::degrees_by_triples(set, t),
            "mismatch on instance " + std::to_string(k));
    }
    return o;
}

Outcome full_space_law()
{
    Outcome o;
    for (int q : {3, 5})
        for (int n = 0; n <= 4; ++n) {
            const auto space = PointSet::full_space(q, n);
            for (int a = 1; a < q; ++a)
                for (int b = 1; b < q; ++b) {
                    if ((a + b) % q == 0)
                        continue;
                    const auto p = degree_profile(space, make_triple(q, a, b, -(a + b)), 0);
                    for (auto d : p.degrees)
                        o.require(d == space.size(), "q=" + std::to_string(q) + " n=" + std::to_string(n));
                }
        }
    return o;
}

Outcome slice_rank_oracle()
{
    Outcome o;
    const auto table = oracle::slice_rank_table(2, 2);
    std::vector<std::vector<std::size_t>> subsets{{}, {0}, {1}, {0, 1}};
    for (std::uint64_t code = 0; code < 256; ++code) {
        const auto t = oracle::decode_dense(2, 2, code);
        const int rank = slice_rank_exact_small(t);
        const std::string tag = "tensor " + std::to_string(code);
        o.require(rank == table[code], tag + ": differs from rank-one sum search");
        o.require((rank == 0) == t.is_zero(), tag + ": rank 0 iff zero fails");
        bool diag = true;
        int nonzero = 0;
        for (const auto& [alpha, c] : t.entries()) {
            diag = diag && is_diagonal_tuple(alpha);
            ++nonzero;
        }
        if (diag)
            o.require(rank == nonzero, tag + ": diagonal law fails");
        for (const auto& s : subsets)
            if (independent_set_check(t, s))
                o.require(diagonal_rank_certificate(t, s) <= static_cast<std::size_t>(rank), tag + ": certificate");
    }
    return o;
}

Outcome clp_witness()
{
    Outcome o;
    const auto t = make_triple(3, 1, 1, 1);
    const std::size_t limits[] = {3, 9, 30};
    const auto f = make_field(3);
    for (int n = 1; n <= 3; ++n) {
        const auto dec = clp_decomposition(3, n, t);
        const auto sum = decomposition_tensor(dec);
        const auto exact = ap_tensor(PointSet::full_space(3, n), t);
        o.require(sum == exact, "n=" + std::to_string(n) + ": re-sum differs from the AP tensor");
        const auto size = space_size(3, n);
        const std::vector<Residue> coeffs{1, 1, 1};
        for (Code x = 0; x < size; ++x)
            for (Code y = 0; y < size; ++y)
                for (Code z = 0; z < size; ++z) {
                    const std::vector<Point> pts{{decode(x, 3, n)}, {decode(y, 3, n)}, {decode(z, 3, n)}};
                    const auto v = vec_combine(f, coeffs, pts).digits;
                    const Residue want = std::all_of(v.begin(), v.end(), [](Residue r) { return r == 0; });
                    o.require(sum.at({static_cast<Index>(x), static_cast<Index>(y), static_cast<Index>(z)}) == want,
                        "n=" + std::to_string(n) + ": wrong value");
                }
        o.require(BigInt(dec.slices.size()) <= 3 * monomial_count(3, n), "n=" + std::to_string(n) + ": too many slices");
        o.require(dec.slices.size() <= limits[n - 1], "n=" + std::to_string(n) + ": slice count over limit");
    }
    return o;
}

Outcome bounds_pipeline()
{
    Outcome o;
    for (int q : {2, 3, 5})
        for (int n = 0; n <= 6; ++n)
            o.require(monomial_count(q, n) == BigInt(oracle::monomials_by_listing(q, n)),
                "M_n mismatch q=" + std::to_string(q) + " n=" + std::to_string(n));
    const double b2 = asymptotic_bq(2), b3 = asymptotic_bq(3);
    o.require(std::abs(b2 - 1.8899) <= 1e-3, "b_2 = " + std::to_string(b2));
    o.require(std::abs(b3 - 2.7551) <= 1e-3, "b_3 = " + std::to_string(b3));
    const double r = finite_rate(3, 300);
    o.require(std::abs(r - b3) / b3 < 0.03, "finite_rate(3,300) = " + std::to_string(r));
    const double e = epsilon_budget(3).eps_max;
    o.require(std::abs(e - 0.2327) <= 1e-3, "eps_max(3) = " + std::to_string(e));
    return o;
}

Outcome chain_soundness()
{
    Outcome o;
    Rng rng(2024);
    int solvable = 0;
    for (int k = 0; k < 100; ++k) {
        const int q = k % 2 == 0 ? 3 : 5;
        const std::size_t d = 4 + static_cast<std::size_t>(rng.below(2));
        CoeffVector c;
        do
            c = random_coeffs(q, d, rng);
        while (!rearrangement_exists(c));
        const int n = q == 3 ? 2 + static_cast<int>(rng.below(2)) : 2;
        const auto set = random_points(q, n, d + static_cast<std::size_t>(rng.below(13 - d)), rng);
        const bool exists = !brute_force_solutions(set, c, 1).empty();
        const auto res = find_distinct_solution(set, c);
        const std::string tag = "instance " + std::to_string(k);
        o.require(res.status != ChainStatus::BudgetExhausted, tag + ": budget exhausted");
        o.require((res.status == ChainStatus::Found) == exists, tag + ": solvability disagrees");
        if (res.status == ChainStatus::Found) {
            o.require(solves(set, c, res.solution), tag + ": returned tuple is not a distinct solution");
            ++solvable;
        }
    }
    o.detail = o.ok ? std::to_string(solvable) + "/100 solvable" : o.detail;
    return o;
}

Outcome rearrangement_edge()
{
    Outcome o;
    try {
        const std::vector<long long> ones{1, 1, 1, 1};
        prefix_rearrange(make_coeff_vector(2, ones));
        o.require(false, "q=2 all-ones was rearranged");
    } catch (const Error& e) {
        o.require(e.code() == ErrorCode::NoValidRearrangement, "wrong error for q=2 all-ones");
    }
    Rng rng(77);
    const int qs[] = {3, 5, 7};
    int drawn = 0;
    int none = 0;
    while (drawn < 50) {
        const int q = qs[drawn % 3];
        const auto d = 4 + static_cast<std::size_t>(rng.below(3));
        const auto c = random_coeffs(q, d, rng);
        ++drawn;
        if (!rearrangement_exists(c)) {
            // vectors like (1,1,1,1,1,1) over F_3 have no admissible order
            ++none;
            try {
                prefix_rearrange(c);
                o.require(false, "rearranged a vector with no admissible order");
            } catch (const Error& e) {
                o.require(e.code() == ErrorCode::NoValidRearrangement, "wrong error code");
            }
            continue;
        }
        const auto perm = prefix_rearrange(c);
        auto sorted = perm;
        std::sort(sorted.begin(), sorted.end());
        bool is_perm = true;
        for (std::size_t i = 0; i < sorted.size(); ++i)
            is_perm = is_perm && sorted[i] == i;
        o.require(is_perm && prefix_sums_nonzero(c, perm), "bad rearrangement");
    }
    if (o.ok)
        o.detail = std::to_string(none) + "/50 drawn vectors admit no order";
    return o;
}

Outcome cap_ground_truth()
{
    Outcome o;
    const auto t = make_triple(3, 1, 1, 1);
    const auto one = max_cap_exact(3, 1, t);
    const auto two = max_cap_exact(3, 2, t);
    o.require(one.size == 2, "max cap in F_3 = " + std::to_string(one.size));
    o.require(two.size == 4, "max cap in F_3^2 = " + std::to_string(two.size));
    o.require(one.witness.size() == 2 && is_cap_set(one.witness, t), "F_3 witness");
    o.require(two.witness.size() == 4 && is_cap_set(two.witness, t), "F_3^2 witness");
    return o;
}

/// AP-tensor supports of random subsets of F_3^3 and F_5^2, half of them
/// with a few extra off-diagonal tuples (some with a repeated index).
SparseTensor random_support(int k, Rng& rng)
{
    const int q = k % 2 == 0 ? 3 : 5;
    const int n = q == 3 ? 3 : 2;
    const double density = 0.2 + 0.8 * rng.unit();
    auto set = random_points(q, n, static_cast<std::size_t>(density * static_cast<double>(space_size(q, n))), rng);
    auto t = ap_tensor(set, random_triple(q, rng));
    if (k % 4 < 2 && t.dim() >= 2) {
        const auto extra = rng.below(t.dim());
        for (std::uint64_t e = 0; e < extra; ++e) {
            const auto i = static_cast<Index>(rng.below(t.dim()));
            const auto j = static_cast<Index>(rng.below(t.dim()));
            const auto l = rng.below(2) == 0 ? i : static_cast<Index>(rng.below(t.dim()));
            t.set({i, j, l}, 1);
        }
    }
    return t;
}

Outcome caro_wei_validity()
{
    Outcome o;
    Rng rng(9);
    double worst = 1e300;
    for (int k = 0; k < 100; ++k) {
        const auto t = random_support(k, rng);
        const auto h = support_hypergraph(t);
        const std::string tag = "hypergraph " + std::to_string(k);
        o.require(h.vertices.size() <= 30, tag + ": too many vertices");
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto single = caro_wei_greedy(h, 1, derive_seed(k, s));
            o.require(is_independent(h, single.set), tag + ": greedy output not independent");
        }
        const auto best = caro_wei_greedy(h, 200, static_cast<std::uint64_t>(k));
        o.require(is_independent(h, best.set), tag + ": best output not independent");
        const double floor = 0.5 * caro_wei_bound(h, 1.0 / 3.0);
        o.require(static_cast<double>(best.set.size()) >= floor, tag + ": below the floor");
        if (floor > 0)
            worst = std::min(worst, static_cast<double>(best.set.size()) / floor);
    }
    if (o.ok) {
        std::ostringstream s;
        s << "min |I| / floor = " << worst;
        o.detail = s.str();
    }
    return o;
}

Outcome cli_reproducibility()
{
    using namespace cli_test;
    Outcome o;
    const std::string fixtures = std::string(CAPSLICE_SOURCE_DIR) + "/tests/fixtures";
    const std::string golden = std::string(CAPSLICE_SOURCE_DIR) + "/tests/golden";
    std::set<std::string> covered;
    for (const auto& c : cases()) {
        std::ifstream in(golden + "/" + c.name + ".out", std::ios::binary);
        std::ostringstream pinned;
        pinned << in.rdbuf();
        const auto a = run(CAPSLICE_CLI, fixtures, c.args);
        const auto b = run(CAPSLICE_CLI, fixtures, c.args);
        o.require(a.exit_code == c.exit_code, std::string(c.name) + ": exit code " + std::to_string(a.exit_code));
        o.require(normalize(a.text) == pinned.str(), std::string(c.name) + ": differs from golden file");
        o.require(normalize(a.text) == normalize(b.text), std::string(c.name) + ": differs between runs");
        if (c.threaded) {
            const auto one = run(CAPSLICE_CLI, fixtures, std::string(c.args) + " --threads 1");
            const auto eight = run(CAPSLICE_CLI, fixtures, std::string(c.args) + " --threads 8");
            o.require(normalize(one.text) == normalize(eight.text), std::string(c.name) + ": differs across threads");
        }
        if (c.exit_code == 0)
            covered.insert(std::string(c.args).substr(0, std::string(c.args).find(' ')));
    }
    for (const char* sub : {"profile", "classify", "capcheck", "tensor", "indep", "bounds", "chain", "search", "gen", "scan"})
        o.require(covered.count(sub) > 0, std::string("no golden fixture for ") + sub);
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double limit_s; // 0 = untimed
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "degree profile matches triple enumeration", 10, oracle_equivalence},
        {2, "full-space degrees equal q^n", 0, full_space_law},
        {3, "slice rank on all q=2 N=2 tensors", 60, slice_rank_oracle},
        {4, "polynomial slices re-sum to the AP tensor", 0, clp_witness},
        {5, "monomial counts, b_q and eps_max", 0, bounds_pipeline},
        {6, "chain solver agrees with brute force", 30, chain_soundness},
        {7, "coefficient rearrangement", 0, rearrangement_edge},
        {8, "maximum caps in F_3 and F_3^2", 60, cap_ground_truth},
        {9, "greedy independent sets and degree floor", 0, caro_wei_validity},
        {10, "CLI golden outputs reproducible", 0, cli_reproducibility},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && c.limit_s > 0 && secs >= c.limit_s) {
            o.ok = false;
            o.detail = "took longer than " + std::to_string(static_cast<int>(c.limit_s)) + " s";
        }
        failed += !o.ok;
        std::ostringstream line;
        line << (o.ok ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.name << " (" << std::fixed
             << std::setprecision(2) << secs << " s)";
        if (!o.detail.empty())
            line << ": " << o.detail;
        std::cout << line.str() << '\n';
    }
    return failed == 0 ? 0 : 1;
}
