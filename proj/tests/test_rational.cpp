// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "feqn/error.hpp"
#include "feqn/rational.hpp"
#include "support.hpp"

using namespace feqn;
using feqn::testing::Gen;
using feqn::testing::Q;

TEST(Rational, ParsesIntegersAndFractions) {
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational("-3"), Rational(-3));
    EXPECT_EQ(parse_rational("+3"), Rational(3));
    EXPECT_EQ(parse_rational("2/4"), frac(1, 2));
    EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
}

TEST(Rational, RejectsInexactAndMalformedLiterals) {
    for (const char* bad : {"0.25", "1e3", "1/0", "", "/2", "1/", "abc", "1 /2", "inf", "0x10", "1/2/3", "6/-4"}) {
        try {
            parse_rational(bad);
            ADD_FAILURE() << "accepted " << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::Parse) << bad;
        }
    }
}

TEST(Rational, RoundTripProperty) {
    Gen gen(1);
    for (int i = 0; i < 500; ++i) {
        const Rational q = gen.rational(1000000, 1000000);
        EXPECT_EQ(parse_rational(to_string(q)), q);
    }
}

TEST(Bound, OrderAndArithmetic) {
    const Bound lo = Bound::neg_inf(), hi = Bound::pos_inf(), one(Q("1"));
    EXPECT_LT(lo, one);
    EXPECT_LT(one, hi);
    EXPECT_EQ(Bound::parse("-inf"), lo);
    EXPECT_EQ(Bound::parse("+inf"), hi);
    EXPECT_EQ(Bound::parse("inf"), hi);
    EXPECT_EQ(one.scaled(Q("-2")), Bound(Q("-2")));
    EXPECT_EQ(hi.scaled(Q("-1/3")), lo);
    EXPECT_EQ(lo + one, lo);
    EXPECT_EQ(Bound(Q("1/2")) + Bound(Q("1/3")), Bound(Q("5/6")));
    EXPECT_THROW(lo + hi, Error);
    EXPECT_THROW(hi.value(), Error);
    EXPECT_EQ(to_string(lo), "-inf");
}

TEST(Matrix, ApplyAndRank) {
    const Matrix m = Matrix::from_rows({{Q("1"), Q("2")}, {Q("2"), Q("4")}});
    EXPECT_EQ(m.rank(), 1u);
    EXPECT_EQ(m.apply(Vector{Q("1"), Q("-1/2")}), (Vector{Q("0"), Q("0")}));
    EXPECT_THROW(m.apply(Vector{Q("1")}), Error);
    EXPECT_THROW(Matrix::from_rows({{Q("1")}, {Q("1"), Q("2")}}), Error);
    EXPECT_EQ(Matrix::from_rows({{Q("1"), Q("0")}, {Q("0"), Q("3")}}).rank(), 2u);
}

TEST(Matrix, RankMatchesDeterminantOracleFor2x2) {
    Gen gen(2);
    for (int i = 0; i < 300; ++i) {
        Matrix m = gen.matrix(2, 2);
        if (gen.coin())
            for (std::size_t c = 0; c < 2; ++c)
                m(1, c) = Q("3") * m(0, c);
        const Rational det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        const std::size_t expected = det != 0 ? 2 : (m.is_zero() ? 0 : 1);
        EXPECT_EQ(m.rank(), expected);
    }
}
