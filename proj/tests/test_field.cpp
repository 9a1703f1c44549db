#include "capslice/field.hpp"
#include "capslice/random.hpp"
#include "capslice/set_io.hpp"

#include <gtest/gtest.h>

using namespace capslice;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

std::size_t line_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.line();
    }
    ADD_FAILURE() << "no error thrown";
    return 0;
}

} // namespace

TEST(MakeField, Inverses)
{
    EXPECT_EQ(make_field(3).inv(2), 2);
    EXPECT_EQ(make_field(5).inv(2), 3);
}

TEST(MakeField, RejectsCompositeAndOutOfRange)
{
    EXPECT_EQ(code_of([] { make_field(4); }), ErrorCode::NotPrime);
    EXPECT_EQ(code_of([] { make_field(255); }), ErrorCode::NotPrime);
    EXPECT_EQ(code_of([] { make_field(1); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { make_field(263); }), ErrorCode::OutOfRange);
    EXPECT_NO_THROW(make_field(257));
}

TEST(MakeField, TableAxioms)
{
    for (int q : {2, 3, 5, 7, 31, 257}) {
        const auto f = make_field(q);
        for (int a = 1; a < q; ++a) {
            EXPECT_EQ(f.mul(a, f.inv(a)), 1) << "q=" << q << " a=" << a;
            EXPECT_EQ(f.add(f.neg(a), a), 0);
        }
        EXPECT_EQ(f.neg(0), 0);
        Rng rng(static_cast<std::uint64_t>(q));
        for (int k = 0; k < 500; ++k) {
            const auto a = static_cast<Residue>(rng.below(q)), b = static_cast<Residue>(rng.below(q)),
                       c = static_cast<Residue>(rng.below(q));
            EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            EXPECT_LT(f.add(a, b), q);
            EXPECT_LT(f.mul(a, b), q);
        }
    }
    EXPECT_EQ(code_of([] { make_field(5).inv(0); }), ErrorCode::InvalidArgument);
}

TEST(Encode, Examples)
{
    const std::vector<Residue> a{1, 2}, b{4, 0, 1};
    EXPECT_EQ(encode(a, 3), 7U);
    EXPECT_EQ(encode(b, 5), 29U);
    EXPECT_EQ(decode(0, 3, 2), (std::vector<Residue>{0, 0}));
    EXPECT_EQ(decode(29, 5, 3), b);
}

TEST(Encode, Errors)
{
    const std::vector<Residue> bad{3, 0};
    EXPECT_EQ(code_of([&] { encode(bad, 3); }), ErrorCode::DigitOutOfRange);
    EXPECT_EQ(code_of([] { decode(9, 3, 2); }), ErrorCode::CodeOutOfRange);
    EXPECT_EQ(code_of([] { space_size(3, 31); }), ErrorCode::TooLarge);
    EXPECT_NO_THROW(space_size(2, 48));
}

TEST(Encode, BijectionExhaustive)
{
    for (auto [q, n] : {std::pair{2, 12}, {3, 8}, {5, 5}, {7, 4}, {11, 3}}) {
        const auto size = space_size(q, n);
        for (Code c = 0; c < size; ++c) {
            const auto d = decode(c, q, n);
            ASSERT_EQ(encode(d, q), c);
        }
    }
}

TEST(VecCombine, Examples)
{
    const auto f3 = make_field(3);
    const std::vector<Point> p{{{0, 1}}, {{0, 2}}};
    EXPECT_EQ(vec_combine(f3, std::vector<Residue>{1, 1}, p), (Point{{0, 0}}));
    EXPECT_EQ(vec_combine(f3, std::vector<Residue>{2}, std::vector<Point>{{{1, 1}}}), (Point{{2, 2}}));

    const auto f5 = make_field(5);
    const std::vector<Point> p5{{{0, 0}}, {{0, 1}}, {{2, 0}}, {{4, 2}}};
    EXPECT_EQ(vec_combine(f5, std::vector<Residue>{1, 1, 2, 2}, p5), (Point{{2, 0}}));
}

TEST(VecCombine, DimensionMismatch)
{
    const auto f = make_field(3);
    EXPECT_EQ(code_of([&] { vec_combine(f, std::vector<Residue>{1}, std::vector<Point>{{{0}}, {{1}}}); }),
        ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([&] { vec_combine(f, std::vector<Residue>{1, 1}, std::vector<Point>{{{0}}, {{1, 1}}}); }),
        ErrorCode::DimensionMismatch);
}

TEST(PointSet, SortsAndDeduplicates)
{
    const auto s = PointSet::from_codes(3, 2, {5, 1, 5, 0});
    EXPECT_EQ(s.codes(), (std::vector<Code>{0, 1, 5}));
    EXPECT_TRUE(s.contains(5));
    EXPECT_FALSE(s.contains(2));
    EXPECT_EQ(s.index_of(5), 2U);
    EXPECT_EQ(s.index_of(4), 3U);
    EXPECT_EQ(code_of([] { PointSet::from_codes(3, 2, {9}); }), ErrorCode::CodeOutOfRange);
}

TEST(SetIo, ParseExamples)
{
    const auto s = parse_set("3 2\n0,0\n0,1");
    EXPECT_EQ(s.q(), 3);
    EXPECT_EQ(s.n(), 2);
    EXPECT_EQ(s.size(), 2U);

    EXPECT_EQ(code_of([] { parse_set("3 1\n0\n0"); }), ErrorCode::DuplicatePoint);
    EXPECT_EQ(line_of([] { parse_set("3 1\n0\n0"); }), 3U);
    EXPECT_EQ(code_of([] { parse_set("3 1\n5"); }), ErrorCode::BadDigit);
    EXPECT_EQ(line_of([] { parse_set("3 1\n5"); }), 2U);
}

TEST(SetIo, CommentsBlankLinesAndWhitespace)
{
    const auto s = parse_set("# a cap\n\n5 3\r\n 4, 0 ,1\n# trailing comment\n\n0,0,0\n");
    EXPECT_EQ(s.codes(), (std::vector<Code>{0, 29}));
}

TEST(SetIo, HeaderErrors)
{
    for (const char* text : {"", "# only a comment\n", "3\n0", "3 2 1\n", "x 2\n", "4 2\n0,0", "3 -1\n", "3 40\n"})
        EXPECT_EQ(code_of([&] { parse_set(text); }), ErrorCode::BadHeader) << text;
}

TEST(SetIo, RowErrors)
{
    EXPECT_EQ(code_of([] { parse_set("3 2\n0\n"); }), ErrorCode::BadDigit);
    EXPECT_EQ(code_of([] { parse_set("3 2\n0,1,2\n"); }), ErrorCode::BadDigit);
    EXPECT_EQ(code_of([] { parse_set("3 2\n0,a\n"); }), ErrorCode::BadDigit);
    EXPECT_EQ(code_of([] { parse_set("3 2\n0,-1\n"); }), ErrorCode::BadDigit);
    EXPECT_EQ(code_of([] { parse_set("3 2\n0,\n"); }), ErrorCode::BadDigit);
}

TEST(SetIo, RoundTripRandomSets)
{
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int q = std::array{2, 3, 5, 7}[rng.below(4)];
        const int n = 1 + static_cast<int>(rng.below(4));
        const auto size = space_size(q, n);
        std::vector<Code> codes;
        for (Code c = 0; c < size; ++c)
            if (rng.below(3) == 0)
                codes.push_back(c);
        const auto s = PointSet::from_codes(q, n, codes);
        const auto text = serialize_set(s);
        ASSERT_EQ(parse_set(text), s);
        ASSERT_EQ(serialize_set(parse_set(text)), text);
    }
}

TEST(SetIo, CanonicalOrder)
{
    EXPECT_EQ(serialize_set(parse_set("3 2\n2,2\n0,1\n1,0\n")), "3 2\n1,0\n0,1\n2,2\n");
}
