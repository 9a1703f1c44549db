#pragma once

// Polynomial-method slice decomposition of the solution indicator on F_q^n.
//
// 1[ax + by + cz = 0] = prod_i (1 - (a x_i + b y_i + c z_i)^(q-1)) expands into
// monomials of total degree <= (q-1)n, so in every monomial one of the three
// variable blocks has degree <= (q-1)n/3. Grouping the monomials by the first
// such block and its block monomial gives one slice per group.

#include "capslice/ap_analysis.hpp"
#include "capslice/error.hpp"
#include "capslice/field.hpp"
#include "capslice/tensor.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace capslice {

using Exponents = std::vector<std::uint8_t>;

struct Slice {
    /// 0, 1, 2 for the x, y, z block.
    int axis = 0;
    /// Exponents of the block monomial f, one per coordinate.
    Exponents block;
    /// g as a polynomial in the remaining two blocks (2n exponents, the lower
    /// numbered block first).
    std::map<Exponents, Residue> rest;
    /// Nonzero values of f on F_q^n, by point code.
    std::vector<std::pair<Code, Residue>> f_table;
    /// Nonzero values of g on (F_q^n)^2, by point codes in block order.
    std::vector<std::tuple<Code, Code, Residue>> g_table;
};

struct SliceDecomposition {
    int q = 3;
    int n = 0;
    CoeffTriple coeffs;
    std::vector<Slice> slices;
};

namespace detail {

inline Residue eval_monomial(const FieldCtx& f, const Residue* digits, const std::uint8_t* exps, int n)
{
    Residue v = 1;
    for (int i = 0; i < n; ++i)
        v = f.mul(v, f.pow(digits[i], exps[i]));
    return v;
}

/// Pascal's triangle mod q up to row q-1.
inline std::vector<std::vector<Residue>> binomials_mod(const FieldCtx& f)
{
    const int q = f.q();
    std::vector<std::vector<Residue>> c(static_cast<std::size_t>(q));
    for (int r = 0; r < q; ++r) {
        c[r].assign(static_cast<std::size_t>(r + 1), 1);
        for (int k = 1; k < r; ++k)
            c[r][k] = f.add(c[r - 1][k - 1], c[r - 1][k]);
    }
    return c;
}

} // namespace detail

inline SliceDecomposition clp_decomposition(int q, int n, const CoeffTriple& t)
{
    if (t.q != q)
        throw Error(ErrorCode::FieldMismatch, "coefficient field differs from q");
    const FieldCtx f = make_field(q);
    if (n < 0)
        throw Error(ErrorCode::InvalidArgument, "negative dimension");
    {
        std::uint64_t cube = 1;
        for (int i = 0; i < 3 * n; ++i)
            if ((cube *= static_cast<std::uint64_t>(q)) > (std::uint64_t{1} << 15))
                throw Error(ErrorCode::TooLarge, "q^(3n) exceeds 2^15");
    }
    const int vars = 3 * n;
    const int top = q - 1;
    const auto binom = detail::binomials_mod(f);
    const std::array<Residue, 3> coef{t.a, t.b, t.c};

    // One coordinate's factor 1 - (a x + b y + c z)^(q-1) as (i, j, k) -> coefficient.
    std::vector<std::pair<std::array<int, 3>, Residue>> factor;
    factor.push_back({{0, 0, 0}, 1});
    for (int i = 0; i <= top; ++i)
        for (int j = 0; i + j <= top; ++j) {
            const int k = top - i - j;
            Residue m = f.mul(binom[top][i], binom[top - i][j]);
            m = f.mul(m, f.mul(f.pow(coef[0], i), f.mul(f.pow(coef[1], j), f.pow(coef[2], k))));
            if (m == 0)
                continue;
            if (i == 0 && j == 0 && k == 0)
                factor[0].second = f.sub(factor[0].second, m);
            else
                factor.push_back({{i, j, k}, f.neg(m)});
        }

    std::map<Exponents, Residue> poly{{Exponents(static_cast<std::size_t>(vars), 0), 1}};
    for (int coord = 0; coord < n; ++coord) {
        std::map<Exponents, Residue> next;
        for (const auto& [mono, c] : poly)
            for (const auto& [e, fc] : factor) {
                if (fc == 0)
                    continue;
                Exponents m = mono;
                for (int b = 0; b < 3; ++b)
                    m[b * n + coord] = static_cast<std::uint8_t>(e[b]);
                auto& slot = next[m];
                slot = f.add(slot, f.mul(c, fc));
            }
        std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
        poly = std::move(next);
    }

    // Group by (first block with degree <= (q-1)n/3, its monomial).
    std::map<std::pair<int, Exponents>, std::map<Exponents, Residue>> groups;
    for (const auto& [mono, c] : poly) {
        int axis = -1;
        for (int b = 0; b < 3 && axis < 0; ++b) {
            int deg = 0;
            for (int i = 0; i < n; ++i)
                deg += mono[b * n + i];
            if (3 * deg <= top * n)
                axis = b;
        }
        Exponents block(mono.begin() + axis * n, mono.begin() + (axis + 1) * n);
        Exponents rest;
        for (int b = 0; b < 3; ++b)
            if (b != axis)
                rest.insert(rest.end(), mono.begin() + b * n, mono.begin() + (b + 1) * n);
        groups[{axis, std::move(block)}][std::move(rest)] = c;
    }

    const PointSet space = PointSet::full_space(q, n);
    const auto digits = space.digit_matrix();
    const auto size = space.size();

    SliceDecomposition dec{q, n, t, {}};
    for (auto& [key, rest] : groups) {
        Slice s;
        s.axis = key.first;
        s.block = key.second;
        s.rest = std::move(rest);
        for (std::size_t x = 0; x < size; ++x) {
            const Residue v = detail::eval_monomial(f, digits.data() + x * n, s.block.data(), n);
            if (v)
                s.f_table.emplace_back(space[x], v);
        }
        for (std::size_t u = 0; u < size; ++u)
            for (std::size_t w = 0; w < size; ++w) {
                Residue v = 0;
                for (const auto& [e, c] : s.rest) {
                    const Residue left = detail::eval_monomial(f, digits.data() + u * n, e.data(), n);
                    const Residue right = detail::eval_monomial(f, digits.data() + w * n, e.data() + n, n);
                    v = f.add(v, f.mul(c, f.mul(left, right)));
                }
                if (v)
                    s.g_table.emplace_back(space[u], space[w], v);
            }
        dec.slices.push_back(std::move(s));
    }
    return dec;
}

/// Sums the slices into a tensor on F_q^n (indices = point codes).
inline SparseTensor decomposition_tensor(const SliceDecomposition& dec)
{
    const auto size = space_size(dec.q, dec.n);
    const FieldCtx f = make_field(dec.q);
    std::map<IndexTuple, Residue> acc;
    for (const auto& s : dec.slices)
        for (const auto& [x, fv] : s.f_table)
            for (const auto& [u, w, gv] : s.g_table) {
                IndexTuple alpha(3);
                alpha[s.axis] = static_cast<Index>(x);
                alpha[s.axis == 0 ? 1 : 0] = static_cast<Index>(u);
                alpha[s.axis == 2 ? 1 : 2] = static_cast<Index>(w);
                auto& slot = acc[alpha];
                slot = f.add(slot, f.mul(fv, gv));
            }
    SparseTensor t(dec.q, 3, size);
    for (auto& [alpha, c] : acc)
        t.set(alpha, c);
    return t;
}

} // namespace capslice
