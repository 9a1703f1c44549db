#pragma once

// JSON forms of the library's reports. Tensor and hypergraph indices are
// written 1-based; point codes are written as integers.

#include "capslice/ap_analysis.hpp"
#include "capslice/bounds.hpp"
#include "capslice/chain.hpp"
#include "capslice/clp.hpp"
#include "capslice/hypergraph.hpp"
#include "capslice/tensor.hpp"

#include "json.hpp"

namespace capslice {

using nlohmann::json;

inline json to_json(const CoeffTriple& t) { return json::array({t.a, t.b, t.c}); }

inline json to_json(const DegreeProfile& p)
{
    json degrees = json::array();
    for (std::size_t i = 0; i < p.degrees.size(); ++i)
        degrees.push_back({p.set[i], p.degrees[i]});
    return {{"q", p.set.q()}, {"n", p.set.n()}, {"coeffs", to_json(p.coeffs)}, {"degrees", std::move(degrees)},
        {"total", p.total}};
}

inline json to_json(const SparseTensor& t)
{
    json entries = json::array();
    for (const auto& [alpha, c] : t.entries()) {
        json e = json::array();
        for (auto i : alpha)
            e.push_back(i + 1);
        e.push_back(c);
        entries.push_back(std::move(e));
    }
    return {{"d", t.order()}, {"N", t.dim()}, {"q", t.q()}, {"entries", std::move(entries)}};
}

inline json to_json(const SliceDecomposition& dec)
{
    static constexpr const char* axes[] = {"x", "y", "z"};
    json slices = json::array();
    for (const auto& s : dec.slices) {
        json f = json::array(), g = json::array(), rest = json::array();
        for (const auto& [x, v] : s.f_table)
            f.push_back({x, v});
        for (const auto& [u, w, v] : s.g_table)
            g.push_back({u, w, v});
        for (const auto& [e, c] : s.rest)
            rest.push_back({{"exponents", e}, {"coeff", c}});
        slices.push_back({{"axis", axes[s.axis]}, {"block", s.block}, {"rest", std::move(rest)}, {"f", std::move(f)},
            {"g", std::move(g)}});
    }
    return {{"q", dec.q}, {"n", dec.n}, {"coeffs", to_json(dec.coeffs)}, {"slice_count", dec.slices.size()},
        {"slices", std::move(slices)}};
}

inline json to_json(const MixedHypergraph& h)
{
    json vertices = json::array(), edges = json::array(), degrees = json::array();
    for (std::size_t k = 0; k < h.vertices.size(); ++k) {
        vertices.push_back(h.vertices[k] + 1);
        degrees.push_back({h.vertices[k] + 1, h.degrees[k]});
    }
    for (const auto& e : h.edges) {
        json je = json::array();
        for (auto v : e)
            je.push_back(v + 1);
        edges.push_back(std::move(je));
    }
    return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"degrees", std::move(degrees)}};
}

inline json to_json(const BoundsReport& r)
{
    json out{{"q", r.q}, {"b_q", r.budget.b_q}, {"eps_max", r.budget.eps_max}, {"suggested_eps", r.budget.suggested_eps},
        {"cq_lower", r.budget.cq_lower}, {"suggested_cq", r.budget.suggested_cq}};
    if (r.n) {
        out["n"] = *r.n;
        out["monomial_count"] = r.monomials->str();
        out["finite_rate"] = r.finite_rate ? json(*r.finite_rate) : json(nullptr);
    }
    return out;
}

inline json to_json(const ChainResult& r)
{
    return {{"found", r.status == ChainStatus::Found}, {"status", std::string(to_string(r.status))},
        {"solution", r.solution}, {"nodes", r.nodes}, {"permutation", r.permutation},
        {"auxiliaries_in_set", r.auxiliaries_in_set}};
}

} // namespace capslice
