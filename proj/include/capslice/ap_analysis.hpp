#pragma once

#include "capslice/error.hpp"
#include "capslice/field.hpp"
#include "capslice/parallel.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace capslice {

/// Coefficients (a, b, c) of ax + by + cz = 0: all nonzero, a + b + c = 0 mod q.
struct CoeffTriple {
    int q = 3;
    Residue a = 1, b = 1, c = 1;

    friend bool operator==(const CoeffTriple&, const CoeffTriple&) = default;
};

inline CoeffTriple make_triple(int q, long long a, long long b, long long c)
{
    const FieldCtx f = make_field(q);
    CoeffTriple t{q, f.reduce(a), f.reduce(b), f.reduce(c)};
    if (t.a == 0 || t.b == 0 || t.c == 0)
        throw Error(ErrorCode::InvalidTriple, "coefficients must be nonzero mod " + std::to_string(q));
    if (f.add(f.add(t.a, t.b), t.c) != 0)
        throw Error(ErrorCode::InvalidTriple, "coefficients must sum to 0 mod " + std::to_string(q));
    return t;
}

/// (1, 1, q-2): the triple used when none is given. Invalid for q = 2.
inline CoeffTriple default_triple(int q) { return make_triple(q, 1, 1, q - 2); }

/// d_x for every x in A (aligned with A's sorted codes), where d_x counts the
/// ordered pairs (y, z) in A^2 with ax + by + cz = 0.
struct DegreeProfile {
    PointSet set;
    CoeffTriple coeffs;
    std::vector<std::uint64_t> degrees;
    std::uint64_t total = 0;
};

namespace detail {

/// Callable computing the code of z = -c^{-1}(a x + b y) from digit rows.
class ThirdPoint {
public:
    ThirdPoint(const FieldCtx& f, Residue a, Residue b, Residue c, int n)
        : f_(f)
        , n_(n)
    {
        const Residue s = f.neg(f.inv(c));
        ka_ = f.mul(s, a);
        kb_ = f.mul(s, b);
    }

    Code operator()(const Residue* x, const Residue* y) const noexcept
    {
        Code code = 0;
        Code place = 1;
        for (int i = 0; i < n_; ++i) {
            code += f_.add(f_.mul(ka_, x[i]), f_.mul(kb_, y[i])) * place;
            place *= static_cast<Code>(f_.q());
        }
        return code;
    }

private:
    FieldCtx f_;
    int n_;
    Residue ka_, kb_;
};

} // namespace detail

inline DegreeProfile degree_profile(const PointSet& set, const CoeffTriple& t, unsigned threads = 1)
{
    if (t.q != set.q())
        throw Error(ErrorCode::FieldMismatch,
            "coefficients over F_" + std::to_string(t.q) + " for a set in F_" + std::to_string(set.q()) + "^n");
    const FieldCtx f = make_field(set.q());
    const int n = set.n();
    const auto digits = set.digit_matrix();
    const auto size = set.size();
    const detail::ThirdPoint third(f, t.a, t.b, t.c, n);

    DegreeProfile p{set, t, std::vector<std::uint64_t>(size, 0), 0};
    parallel_for(size, threads, [&](std::size_t i) {
        const Residue* x = digits.data() + i * n;
        std::uint64_t d = 0;
        for (std::size_t j = 0; j < size; ++j)
            if (set.contains(third(x, digits.data() + j * n)))
                ++d;
        p.degrees[i] = d;
    });
    for (auto d : p.degrees)
        p.total += d;
    return p;
}

/// Smallest integer k with k >= size^eps. Near-integer powers are settled in
/// 100-digit arithmetic so that e.g. 4^0.5 gives 2, not 3.
inline std::uint64_t pair_threshold(std::size_t size, double eps)
{
    if (size == 0)
        return 0;
    const long double r = std::pow(static_cast<long double>(size), static_cast<long double>(eps));
    const long double nearest = std::round(r);
    if (std::fabs(r - nearest) > 1e-9L)
        return static_cast<std::uint64_t>(std::ceil(r));

    using Big = boost::multiprecision::cpp_bin_float_100;
    const Big exact = boost::multiprecision::exp(Big(eps) * boost::multiprecision::log(Big(size)));
    const Big rounded = boost::multiprecision::round(exact);
    if (boost::multiprecision::abs(exact - rounded) < Big("1e-60"))
        return rounded.convert_to<std::uint64_t>();
    return boost::multiprecision::ceil(exact).convert_to<std::uint64_t>();
}

namespace detail {

inline void check_unit_interval(double v, const char* name)
{
    if (!(v > 0.0 && v < 1.0))
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " must lie in (0, 1)");
}

inline PointSet select(const DegreeProfile& p, bool heavy, std::uint64_t threshold)
{
    std::vector<Code> codes;
    for (std::size_t i = 0; i < p.degrees.size(); ++i)
        if ((p.degrees[i] >= threshold) == heavy)
            codes.push_back(p.set[i]);
    return PointSet::from_codes(p.set.q(), p.set.n(), std::move(codes));
}

} // namespace detail

/// A_a^eps: points with at least |A|^eps solution pairs.
inline PointSet heavy_set(const DegreeProfile& p, double eps)
{
    detail::check_unit_interval(eps, "eps");
    return detail::select(p, true, pair_threshold(p.set.size(), eps));
}

/// Complement of heavy_set: points with fewer than |A|^eps solution pairs.
inline PointSet light_set(const DegreeProfile& p, double eps)
{
    detail::check_unit_interval(eps, "eps");
    return detail::select(p, false, pair_threshold(p.set.size(), eps));
}

struct EpsDeltaVerdict {
    bool is_cap = false;
    std::uint64_t threshold = 0;
    /// The light set, i.e. the largest admissible A'.
    PointSet witness;
};

/// A is an (eps, delta)-cap set iff its light set is strictly larger than delta|A|.
inline EpsDeltaVerdict classify_eps_delta(const DegreeProfile& p, double eps, double delta)
{
    detail::check_unit_interval(delta, "delta");
    EpsDeltaVerdict v;
    v.witness = light_set(p, eps);
    v.threshold = pair_threshold(p.set.size(), eps);
    v.is_cap = static_cast<double>(v.witness.size()) > delta * static_cast<double>(p.set.size());
    return v;
}

/// Every solution in A^3 is constant. Since a + b + c = 0 the constant
/// triple always solves, so this is d_x == 1 for all x.
inline bool is_cap_set(const DegreeProfile& p)
{
    for (auto d : p.degrees)
        if (d != 1)
            return false;
    return true;
}

inline bool is_cap_set(const PointSet& set, const CoeffTriple& t, unsigned threads = 1)
{
    return is_cap_set(degree_profile(set, t, threads));
}

} // namespace capslice
