#pragma once

#include "capslice/error.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace capslice {

using Residue = std::uint16_t;
using Code = std::uint64_t;

inline constexpr int kMaxModulus = 257;
inline constexpr Code kMaxSpaceSize = Code{1} << 48;

constexpr bool is_prime(int q) noexcept
{
    if (q < 2)
        return false;
    for (int p = 2; p * p <= q; ++p)
        if (q % p == 0)
            return false;
    return true;
}

/// Prime field F_q with add/mul/neg/inv lookup tables. Copies share the
/// tables; the context is immutable after construction.
class FieldCtx {
public:
    int q() const noexcept { return q_; }

    Residue add(Residue a, Residue b) const noexcept { return t_->add[a * q_ + b]; }
    Residue mul(Residue a, Residue b) const noexcept { return t_->mul[a * q_ + b]; }
    Residue neg(Residue a) const noexcept { return t_->neg[a]; }
    Residue sub(Residue a, Residue b) const noexcept { return add(a, neg(b)); }

    /// inv(0) is not defined and throws.
    Residue inv(Residue a) const
    {
        if (a == 0 || a >= q_)
            throw Error(ErrorCode::InvalidArgument, "inverse of " + std::to_string(a) + " in F_" + std::to_string(q_));
        return t_->inv[a];
    }

    Residue pow(Residue a, unsigned e) const noexcept
    {
        Residue r = 1 % q_;
        Residue base = a;
        while (e) {
            if (e & 1U)
                r = mul(r, base);
            base = mul(base, base);
            e >>= 1U;
        }
        return r;
    }

    /// Reduces an arbitrary integer into 0..q-1.
    Residue reduce(long long v) const noexcept
    {
        long long r = v % q_;
        if (r < 0)
            r += q_;
        return static_cast<Residue>(r);
    }

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) noexcept { return a.q_ == b.q_; }

private:
    struct Tables {
        std::vector<Residue> add, mul, neg, inv;
    };

    explicit FieldCtx(int q)
        : q_(q)
    {
        auto t = std::make_shared<Tables>();
        const auto uq = static_cast<std::size_t>(q);
        t->add.resize(uq * uq);
        t->mul.resize(uq * uq);
        t->neg.resize(uq);
        t->inv.assign(uq, 0);
        for (int a = 0; a < q; ++a) {
            t->neg[a] = static_cast<Residue>((q - a) % q);
            for (int b = 0; b < q; ++b) {
                t->add[a * q + b] = static_cast<Residue>((a + b) % q);
                t->mul[a * q + b] = static_cast<Residue>((a * b) % q);
                if ((a * b) % q == 1)
                    t->inv[a] = static_cast<Residue>(b);
            }
        }
        t_ = std::move(t);
    }

    friend FieldCtx make_field(int q);

    int q_;
    std::shared_ptr<const Tables> t_;
};

inline FieldCtx make_field(int q)
{
    if (q < 2 || q > kMaxModulus)
        throw Error(ErrorCode::OutOfRange, "modulus " + std::to_string(q) + " outside 2..257");
    if (!is_prime(q))
        throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not prime");
    return FieldCtx(q);
}

/// q^n, or TooLarge when it exceeds the 2^48 code budget.
inline Code space_size(int q, int n)
{
    if (n < 0)
        throw Error(ErrorCode::InvalidArgument, "negative dimension");
    Code size = 1;
    for (int i = 0; i < n; ++i) {
        size *= static_cast<Code>(q);
        if (size > kMaxSpaceSize)
            throw Error(ErrorCode::TooLarge, "q^n exceeds 2^48 for q=" + std::to_string(q) + ", n=" + std::to_string(n));
    }
    return size;
}

/// Little-endian base-q code: sum of digits[i] * q^i.
inline Code encode(std::span<const Residue> digits, int q)
{
    Code code = 0;
    Code place = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] >= q)
            throw Error(ErrorCode::DigitOutOfRange,
                "digit " + std::to_string(digits[i]) + " at position " + std::to_string(i) + " is not below q=" + std::to_string(q));
        code += digits[i] * place;
        place *= static_cast<Code>(q);
    }
    return code;
}

inline std::vector<Residue> decode(Code code, int q, int n)
{
    if (code >= space_size(q, n))
        throw Error(ErrorCode::CodeOutOfRange, "code " + std::to_string(code) + " is not below q^n");
    std::vector<Residue> digits(static_cast<std::size_t>(n));
    for (auto& d : digits) {
        d = static_cast<Residue>(code % static_cast<Code>(q));
        code /= static_cast<Code>(q);
    }
    return digits;
}

/// A vector in F_q^n.
struct Point {
    std::vector<Residue> digits;

    int dim() const noexcept { return static_cast<int>(digits.size()); }
    Code code(int q) const { return encode(digits, q); }

    friend bool operator==(const Point&, const Point&) = default;
};

/// Returns sum_i scalars[i] * points[i], digitwise mod q.
inline Point vec_combine(const FieldCtx& ctx, std::span<const Residue> scalars, std::span<const Point> points)
{
    if (scalars.size() != points.size())
        throw Error(ErrorCode::DimensionMismatch,
            std::to_string(scalars.size()) + " scalars for " + std::to_string(points.size()) + " points");
    if (points.empty())
        throw Error(ErrorCode::DimensionMismatch, "empty combination has no dimension");
    const auto n = points.front().digits.size();
    Point out{std::vector<Residue>(n, 0)};
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (points[k].digits.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "points of different dimension");
        const Residue s = ctx.reduce(scalars[k]);
        for (std::size_t i = 0; i < n; ++i) {
            if (points[k].digits[i] >= ctx.q())
                throw Error(ErrorCode::DigitOutOfRange, "point digit not below q");
            out.digits[i] = ctx.add(out.digits[i], ctx.mul(s, points[k].digits[i]));
        }
    }
    return out;
}

/// A finite subset of F_q^n stored as strictly increasing point codes.
class PointSet {
public:
    PointSet() = default;

    /// Sorts and deduplicates; rejects codes outside F_q^n.
    static PointSet from_codes(int q, int n, std::vector<Code> codes)
    {
        make_field(q);
        const Code size = space_size(q, n);
        std::sort(codes.begin(), codes.end());
        codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
        if (!codes.empty() && codes.back() >= size)
            throw Error(ErrorCode::CodeOutOfRange, "code " + std::to_string(codes.back()) + " is not below q^n");
        PointSet s;
        s.q_ = q;
        s.n_ = n;
        s.codes_ = std::move(codes);
        return s;
    }

    static PointSet full_space(int q, int n)
    {
        std::vector<Code> codes(space_size(q, n));
        for (Code c = 0; c < codes.size(); ++c)
            codes[c] = c;
        return from_codes(q, n, std::move(codes));
    }

    int q() const noexcept { return q_; }
    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return codes_.size(); }
    bool empty() const noexcept { return codes_.empty(); }
    const std::vector<Code>& codes() const noexcept { return codes_; }
    Code operator[](std::size_t i) const noexcept { return codes_[i]; }

    bool contains(Code code) const noexcept { return std::binary_search(codes_.begin(), codes_.end(), code); }

    /// Sorted position of `code`, or size() when absent.
    std::size_t index_of(Code code) const noexcept
    {
        auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
        if (it == codes_.end() || *it != code)
            return codes_.size();
        return static_cast<std::size_t>(it - codes_.begin());
    }

    Point point(std::size_t i) const { return Point{decode(codes_[i], q_, n_)}; }

    /// Row-major digit matrix: digits of point i occupy [i*n, (i+1)*n).
    std::vector<Residue> digit_matrix() const
    {
        std::vector<Residue> m;
        m.reserve(codes_.size() * static_cast<std::size_t>(n_));
        for (Code c : codes_)
            for (int i = 0; i < n_; ++i) {
                m.push_back(static_cast<Residue>(c % static_cast<Code>(q_)));
                c /= static_cast<Code>(q_);
            }
        return m;
    }

    /// Subset selected by sorted positions.
    PointSet subset(std::span<const std::size_t> positions) const
    {
        std::vector<Code> codes;
        codes.reserve(positions.size());
        for (auto p : positions)
            codes.push_back(codes_.at(p));
        return from_codes(q_, n_, std::move(codes));
    }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    int q_ = 3;
    int n_ = 0;
    std::vector<Code> codes_;
};

} // namespace capslice
