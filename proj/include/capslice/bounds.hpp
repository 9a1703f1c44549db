#pragma once

#include "capslice/error.hpp"
#include "capslice/field.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <vector>

namespace capslice {

using BigInt = boost::multiprecision::cpp_int;

/// Number of monomials in n variables with every exponent <= q-1 and total
/// degree <= (q-1)n/3.
inline BigInt monomial_count(int q, int n)
{
    make_field(q);
    if (n < 0)
        throw Error(ErrorCode::InvalidArgument, "negative dimension");
    const long long cap = static_cast<long long>(q - 1) * n / 3; // floor of the real threshold
    std::vector<BigInt> ways(static_cast<std::size_t>(cap + 1), 0);
    ways[0] = 1;
    for (int v = 0; v < n; ++v) {
        std::vector<BigInt> next(ways.size(), 0);
        for (long long deg = 0; deg <= cap; ++deg) {
            if (ways[deg] == 0)
                continue;
            for (long long e = 0; e < q && deg + e <= cap; ++e)
                next[deg + e] += ways[deg];
        }
        ways = std::move(next);
    }
    BigInt total = 0;
    for (const auto& w : ways)
        total += w;
    return total;
}

inline double log_big(const BigInt& v)
{
    using Float = boost::multiprecision::cpp_bin_float_50;
    return static_cast<double>(boost::multiprecision::log(Float(v)));
}

/// (3 M_n)^(1/n), the per-coordinate growth of the slice count witness.
inline double finite_rate(int q, int n)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, "finite_rate needs n >= 1");
    return std::exp(log_big(3 * monomial_count(q, n)) / n);
}

/// (1 + x + ... + x^(q-1)) / x^((q-1)/3).
inline double rate_objective(int q, double x)
{
    double s = 0.0, p = 1.0;
    for (int i = 0; i < q; ++i, p *= x)
        s += p;
    return s / std::pow(x, (q - 1) / 3.0);
}

/// Minimum of rate_objective over (1e-9, 1] by golden-section search.
inline double asymptotic_bq(int q, double tol = 1e-12)
{
    make_field(q);
    if (!(tol > 0))
        throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 1e-9, hi = 1.0;
    double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
    double f1 = rate_objective(q, x1), f2 = rate_objective(q, x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = rate_objective(q, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = rate_objective(q, x2);
        }
    }
    return std::min(rate_objective(q, 0.5 * (lo + hi)), rate_objective(q, 1.0));
}

struct EpsilonBudget {
    double b_q = 0;
    /// Supremum of admissible eps: b_q^(1/(1 - eps/3)) < q iff eps < eps_max.
    double eps_max = 0;
    double suggested_eps = 0;
    /// b_q^(1/(1 - suggested_eps/3)).
    double cq_lower = 0;
    double suggested_cq = 0;
};

inline EpsilonBudget epsilon_budget(int q, double b_q)
{
    if (!(b_q > 0 && b_q < q))
        throw Error(ErrorCode::InvalidArgument, "b_q must lie in (0, q)");
    EpsilonBudget e;
    e.b_q = b_q;
    e.eps_max = 3.0 * (1.0 - std::log(b_q) / std::log(static_cast<double>(q)));
    e.suggested_eps = e.eps_max / 2.0;
    e.cq_lower = std::pow(b_q, 1.0 / (1.0 - e.suggested_eps / 3.0));
    e.suggested_cq = 0.5 * (e.cq_lower + q);
    return e;
}

inline EpsilonBudget epsilon_budget(int q) { return epsilon_budget(q, asymptotic_bq(q)); }

struct BoundsReport {
    int q = 3;
    std::optional<int> n;
    std::optional<BigInt> monomials;
    std::optional<double> finite_rate;
    EpsilonBudget budget;
};

inline BoundsReport bounds_report(int q, std::optional<int> n = std::nullopt, double tol = 1e-12)
{
    BoundsReport r;
    r.q = q;
    r.budget = epsilon_budget(q, asymptotic_bq(q, tol));
    if (n) {
        r.n = n;
        r.monomials = monomial_count(q, *n);
        if (*n >= 1)
            r.finite_rate = finite_rate(q, *n);
    }
    return r;
}

} // namespace capslice
