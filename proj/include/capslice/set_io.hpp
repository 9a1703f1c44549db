#pragma once

// Text set files:
//   line 1      "<q> <n>"
//   each line   n comma-separated digits
// Blank lines and lines starting with '#' are ignored. Canonical output
// lists points by ascending code with a trailing newline.

#include "capslice/error.hpp"
#include "capslice/field.hpp"

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>

namespace capslice {

namespace detail {

inline std::string_view trim(std::string_view s) noexcept
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool parse_uint(std::string_view s, long long& out) noexcept
{
    if (s.empty())
        return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && out >= 0;
}

} // namespace detail

inline PointSet parse_set(std::string_view text)
{
    int q = 0;
    int n = -1;
    std::vector<Code> codes;
    std::unordered_set<Code> seen;
    std::vector<Residue> digits;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        const auto raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        const auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#')
            continue;

        if (n < 0) {
            std::istringstream in{std::string(line)};
            std::string qs, ns, extra;
            long long qv = 0, nv = 0;
            if (!(in >> qs >> ns) || (in >> extra) || !detail::parse_uint(qs, qv) || !detail::parse_uint(ns, nv))
                throw Error(ErrorCode::BadHeader, "expected \"<q> <n>\" on line " + std::to_string(line_no), line_no);
            if (qv < 2 || qv > kMaxModulus || !is_prime(static_cast<int>(qv)))
                throw Error(ErrorCode::BadHeader, "q=" + std::string(qs) + " is not a prime in 2..257", line_no);
            if (nv > 64)
                throw Error(ErrorCode::BadHeader, "dimension " + std::string(ns) + " too large", line_no);
            try {
                space_size(static_cast<int>(qv), static_cast<int>(nv));
            } catch (const Error& e) {
                throw Error(ErrorCode::BadHeader, e.message(), line_no);
            }
            q = static_cast<int>(qv);
            n = static_cast<int>(nv);
            continue;
        }

        digits.clear();
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            const auto field = detail::trim(rest.substr(0, comma));
            long long v = 0;
            if (!detail::parse_uint(field, v) || v >= q)
                throw Error(ErrorCode::BadDigit,
                    "invalid digit \"" + std::string(field) + "\" on line " + std::to_string(line_no), line_no);
            digits.push_back(static_cast<Residue>(v));
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (static_cast<int>(digits.size()) != n)
            throw Error(ErrorCode::BadDigit,
                "expected " + std::to_string(n) + " digits on line " + std::to_string(line_no) + ", found "
                    + std::to_string(digits.size()),
                line_no);
        const Code code = encode(digits, q);
        if (!seen.insert(code).second)
            throw Error(ErrorCode::DuplicatePoint, "duplicate point on line " + std::to_string(line_no), line_no);
        codes.push_back(code);
    }
    if (n < 0)
        throw Error(ErrorCode::BadHeader, "missing \"<q> <n>\" header", 1);
    return PointSet::from_codes(q, n, std::move(codes));
}

inline std::string serialize_set(const PointSet& set)
{
    if (set.n() == 0 && !set.empty())
        throw Error(ErrorCode::InvalidArgument, "the point of F_q^0 has no digit row in the text format");
    std::string out = std::to_string(set.q()) + " " + std::to_string(set.n()) + "\n";
    for (Code c : set.codes()) {
        for (int i = 0; i < set.n(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(c % static_cast<Code>(set.q()));
            c /= static_cast<Code>(set.q());
        }
        out += '\n';
    }
    return out;
}

} // namespace capslice
