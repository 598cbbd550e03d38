// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>

#include "feqn/domains.hpp"
#include "feqn/error.hpp"
#include "feqn/sampling.hpp"
#include "support.hpp"

using namespace feqn;
using feqn::testing::Gen;
using feqn::testing::I;
using feqn::testing::Q;
using feqn::testing::V;

namespace {

const Interval& as_interval(const WeightedImage& w) { return std::get<Interval>(w.result); }

void expect_valid_witness(const Domain& k, const std::vector<Rational>& alphas, const InvarianceWitness& w) {
    ASSERT_EQ(w.tuple.size(), alphas.size());
    for (const auto& x : w.tuple)
        EXPECT_TRUE(contains(k, x)) << to_string(x);
    EXPECT_EQ(w.value, feqn::testing::weighted_sum(alphas, w.tuple));
    EXPECT_FALSE(contains(k, w.value));
}

}  // namespace

TEST(Interval, OpenMembershipAndInclusion) {
    const auto k = I("-1", "2");
    EXPECT_TRUE(k.contains(Q("0")));
    EXPECT_FALSE(k.contains(Q("2")));
    EXPECT_FALSE(k.contains(Q("-1")));
    EXPECT_TRUE(k.includes(I("-1", "2")));
    EXPECT_TRUE(k.includes(I("-1/2", "2")));
    EXPECT_FALSE(k.includes(I("-2", "0")));
    EXPECT_TRUE(Interval::whole_line().includes(k));
    EXPECT_THROW(I("1", "1"), Error);
    EXPECT_THROW(I("2", "1"), Error);
}

TEST(WeightedImage, ExampleFromTheInvarianceDiscussion) {
    const std::vector<Rational> a{Q("1/4"), Q("-1/5")};
    const auto w = weighted_image(I("-1", "2"), a);
    EXPECT_EQ(as_interval(w), I("-13/20", "7/10"));
    EXPECT_EQ(w.alpha_plus, Q("1/4"));
    EXPECT_EQ(w.alpha_minus, Q("-1/5"));
}

TEST(WeightedImage, UnboundedDomains) {
    const std::vector<Rational> a{Q("1"), Q("1")};
    EXPECT_EQ(as_interval(weighted_image(I("0", "inf"), a)), I("0", "inf"));
    const std::vector<Rational> b{Q("1"), Q("-1")};
    EXPECT_EQ(as_interval(weighted_image(I("0", "inf"), b)), Interval::whole_line());
    EXPECT_TRUE(check_invariance(Interval::whole_line(), b).invariant);
}

TEST(WeightedImage, MatchesEndpointOracle) {
    Gen gen(11);
    const char* ends[] = {"-inf", "inf"};
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = static_cast<std::size_t>(gen.integer(2, 5));
        std::vector<Rational> alphas;
        for (std::size_t i = 0; i < n; ++i)
            alphas.push_back(gen.nonzero());
        Rational lo = gen.rational(), hi = lo + gen.positive();
        Bound blo(lo), bhi(hi);
        if (gen.integer(0, 4) == 0)
            blo = Bound::parse(ends[0]);
        if (gen.integer(0, 4) == 0)
            bhi = Bound::parse(ends[1]);
        const Interval k(blo, bhi);
        const auto oracle = feqn::testing::weighted_interval_oracle(k, alphas);
        const Interval got = as_interval(weighted_image(k, alphas));
        EXPECT_EQ(got.lo(), oracle.lo);
        EXPECT_EQ(got.hi(), oracle.hi);
    }
}

// Every sampled weighted sum lands in the computed image.
TEST(WeightedImage, SampledSumsLieInImage) {
    Gen gen(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = static_cast<std::size_t>(gen.integer(2, 4));
        std::vector<Rational> alphas;
        for (std::size_t i = 0; i < n; ++i)
            alphas.push_back(gen.nonzero());
        const Rational lo = gen.rational();
        const Interval k(lo, Rational(lo + gen.positive()));
        const auto image = as_interval(weighted_image(k, alphas));
        Sampler s(static_cast<std::uint64_t>(trial));
        for (int j = 0; j < 50; ++j) {
            Rational sum = 0;
            for (const auto& a : alphas)
                sum += a * s.in_interval(k);
            EXPECT_TRUE(image.contains(sum));
        }
    }
}

TEST(WeightedImage, BoxIsComputedPerSide) {
    const Box b({I("0", "1"), I("-1", "2")});
    const std::vector<Rational> a{Q("1/4"), Q("-1/5")};
    const auto w = weighted_image(b, a);
    const auto& box = std::get<Box>(w.result);
    EXPECT_EQ(box.sides()[0], I("-1/5", "1/4"));
    EXPECT_EQ(box.sides()[1], I("-13/20", "7/10"));
}

TEST(CheckInvariance, InvariantInterval) {
    const std::vector<Rational> a{Q("1/4"), Q("-1/5")};
    const auto r = check_invariance(I("-1", "2"), a);
    EXPECT_TRUE(r.invariant);
    EXPECT_FALSE(r.witness);
}

TEST(CheckInvariance, WitnessForUnitInterval) {
    const std::vector<Rational> a{Q("1"), Q("1")};
    const Domain k = I("0", "1");
    const auto r = check_invariance(k, a);
    ASSERT_FALSE(r.invariant);
    ASSERT_TRUE(r.witness);
    expect_valid_witness(k, a, *r.witness);
    EXPECT_EQ(as_interval(*r.image), I("0", "2"));
}

TEST(CheckInvariance, DecisionMatchesInclusionOracleAndWitnessesAreValid) {
    Gen gen(13);
    int negatives = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = static_cast<std::size_t>(gen.integer(2, 4));
        std::vector<Rational> alphas;
        for (std::size_t i = 0; i < n; ++i)
            alphas.push_back(gen.nonzero(3, 5));
        const Rational lo = gen.rational(4, 3);
        const Domain k = Interval(lo, Rational(lo + gen.positive(4, 3)));
        const auto oracle = feqn::testing::weighted_interval_oracle(std::get<Interval>(k), alphas);
        const bool expected = oracle.lo >= std::get<Interval>(k).lo() && oracle.hi <= std::get<Interval>(k).hi();
        const auto r = check_invariance(k, alphas, static_cast<std::uint64_t>(trial));
        EXPECT_EQ(r.invariant, expected);
        if (!r.invariant) {
            ++negatives;
            ASSERT_TRUE(r.witness);
            expect_valid_witness(k, alphas, *r.witness);
        }
    }
    EXPECT_GT(negatives, 50);
}

TEST(CheckInvariance, BoxWitness) {
    const Domain k = Box({I("0", "1"), I("-1", "1")});
    const std::vector<Rational> a{Q("1"), Q("1")};
    const auto r = check_invariance(k, a);
    ASSERT_FALSE(r.invariant);
    expect_valid_witness(k, a, *r.witness);
}

TEST(Cone, ExactMembership) {
    const Cone quadrant({V({"1", "0"}), V({"0", "1"})});
    EXPECT_TRUE(quadrant.contains(V({"1/1000", "5"})));
    EXPECT_FALSE(quadrant.contains(V({"0", "5"})));
    EXPECT_FALSE(quadrant.contains(V({"-1", "5"})));
    const Cone wedge({V({"1", "1"}), V({"1", "-1"}), V({"1", "0"})});
    EXPECT_TRUE(wedge.contains(V({"1", "0"})));
    EXPECT_TRUE(wedge.contains(V({"2", "1"})));
    EXPECT_FALSE(wedge.contains(V({"1", "1"})));
    EXPECT_FALSE(wedge.contains(V({"0", "0"})));
    EXPECT_FALSE(wedge.is_whole_space());
    EXPECT_THROW(Cone({V({"1", "1"}), V({"2", "2"})}), Error);
}

// For a simplicial cone membership is positivity of the coordinates in the generator basis.
TEST(Cone, MembershipMatchesBasisCoordinateOracle) {
    Gen gen(14);
    for (int trial = 0; trial < 200; ++trial) {
        Matrix g = gen.matrix(2, 2);
        const Rational det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
        if (det == 0)
            continue;
        const Cone c({g.col(0), g.col(1)});
        const Vector x = gen.vector(2);
        const Rational l0 = (g(1, 1) * x[0] - g(0, 1) * x[1]) / det;
        const Rational l1 = (-g(1, 0) * x[0] + g(0, 0) * x[1]) / det;
        EXPECT_EQ(c.contains(x), l0 > 0 && l1 > 0);
    }
}

TEST(Cone, Invariance) {
    const Domain quadrant = Cone({V({"1", "0"}), V({"0", "1"})});
    const std::vector<Rational> pos{Q("2"), Q("1/3")};
    EXPECT_TRUE(check_invariance(quadrant, pos).invariant);
    const std::vector<Rational> mixed{Q("1"), Q("-1")};
    const auto r = check_invariance(quadrant, mixed);
    ASSERT_FALSE(r.invariant);
    expect_valid_witness(quadrant, mixed, *r.witness);
    const Domain plane = Cone({V({"1", "0"}), V({"0", "1"}), V({"-1", "-1"})});
    EXPECT_TRUE(std::get<Cone>(plane).is_whole_space());
    EXPECT_TRUE(check_invariance(plane, mixed).invariant);
    EXPECT_THROW(weighted_image(quadrant, pos), Error);
}

TEST(Shrink, ExampleFromTheInvarianceDiscussion) {
    const std::vector<Rational> a{Q("1/4"), Q("-1/5")};
    const auto s = find_symmetric_subdomain(I("-1", "2"), a);
    EXPECT_EQ(s.interval, I("-1", "1"));
    EXPECT_FALSE(s.edge_case);
}

TEST(Shrink, EdgeCaseReturnsSymmetricDomain) {
    const std::vector<Rational> a{Q("1/2"), Q("-1/2")};
    const auto s = find_symmetric_subdomain(I("-3", "3"), a);
    EXPECT_EQ(s.interval, I("-3", "3"));
    EXPECT_TRUE(s.edge_case);
    EXPECT_THROW(find_symmetric_subdomain(I("-3", "4"), a), Error);
}

TEST(Shrink, WholeLineAndRefusals) {
    const std::vector<Rational> a{Q("1/2"), Q("-1/4")};
    const auto s = find_symmetric_subdomain(Interval::whole_line(), a);
    EXPECT_EQ(s.interval, Interval::whole_line());
    EXPECT_TRUE(s.unbounded_case);
    const std::vector<Rational> big{Q("1"), Q("-1/2")};
    EXPECT_THROW(find_symmetric_subdomain(I("-1", "1"), big), Error);
    const std::vector<Rational> ok{Q("1/2"), Q("-1/4")};
    EXPECT_THROW(find_symmetric_subdomain(I("1", "2"), ok), Error);
}

TEST(Shrink, PostconditionsOnRandomInvariantIntervals) {
    Gen gen(15);
    int found = 0;
    for (int trial = 0; trial < 2000 && found < 150; ++trial) {
        std::vector<Rational> alphas{gen.nonzero(2, 6), gen.nonzero(2, 6)};
        if (gen.coin())
            alphas.push_back(gen.nonzero(2, 6));
        Rational total = 0;
        for (const auto& a : alphas)
            total += abs(a);
        if (total > 1)
            continue;
        const Interval k(Rational(-gen.positive()), gen.positive());
        if (!check_invariance(k, alphas).invariant)
            continue;
        SymmetricSubdomain s{Interval::whole_line(), 0, 0};
        try {
            s = find_symmetric_subdomain(k, alphas);
        } catch (const Error& e) {
            ADD_FAILURE() << e.what();
            continue;
        }
        ++found;
        const Interval& kp = s.interval;
        EXPECT_TRUE(k.includes(kp));
        const bool mixed = std::any_of(alphas.begin(), alphas.end(), [](const Rational& a) { return a < 0; });
        if (mixed) {
            EXPECT_EQ(kp.lo(), kp.hi().negated());
            EXPECT_TRUE(kp.contains(Q("0")));
        } else {
            EXPECT_EQ(kp, k);
        }
        std::vector<Rational> abs_alphas;
        for (const auto& a : alphas)
            abs_alphas.push_back(abs(a));
        EXPECT_TRUE(as_interval(weighted_image(kp, abs_alphas)).lo() >= kp.lo());
        EXPECT_TRUE(as_interval(weighted_image(kp, abs_alphas)).hi() <= kp.hi());
        EXPECT_TRUE(as_interval(weighted_image(kp, alphas)).lo() >= kp.lo());
    }
    EXPECT_GE(found, 100);
}

TEST(Sampler, DeterministicAndInside) {
    const Domain k = Box({I("0", "1"), I("-inf", "3")});
    Sampler a(99), b(99);
    for (int i = 0; i < 200; ++i) {
        const Vector x = a.in_domain(k);
        EXPECT_EQ(x, b.in_domain(k));
        EXPECT_TRUE(contains(k, x));
    }
    const Domain c = Cone({V({"1", "2"}), V({"3", "-1"})});
    for (int i = 0; i < 100; ++i)
        EXPECT_TRUE(contains(c, a.in_domain(c)));
}

TEST(CheckInvariance, PositiveQuadrantBox) {
    const Domain quadrant = Box({I("0", "inf"), I("0", "inf")});
    Gen gen(16);
    for (int i = 0; i < 20; ++i) {
        const std::vector<Rational> a{gen.positive(), gen.positive()};
        EXPECT_TRUE(check_invariance(quadrant, a).invariant);
    }
}

// 10^3 sampled tuples stay in the image, and tuples built toward each end get within eps of it.
TEST(WeightedImage, EndpointsApproachedWithinEpsilon) {
    Gen gen(17);
    const Rational eps = Q("1/1000");
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> alphas{gen.nonzero(), gen.nonzero(), gen.nonzero()};
        const Rational lo = gen.rational();
        const Interval k(lo, Rational(lo + gen.positive()));
        const auto image = as_interval(weighted_image(k, alphas));
        Sampler s(static_cast<std::uint64_t>(trial));
        for (int j = 0; j < 1000; ++j) {
            Rational sum = 0;
            for (const auto& a : alphas)
                sum += a * s.in_interval(k);
            ASSERT_TRUE(image.contains(sum));
        }
        Rational total = 0;
        for (const auto& a : alphas)
            total += abs(a);
        const Rational d = eps / (2 * total);
        for (const bool upper : {false, true}) {
            Rational sum = 0;
            for (const auto& a : alphas) {
                const bool toward_hi = (a > 0) == upper;
                const Rational x = toward_hi ? Rational(k.hi().value() - d) : Rational(k.lo().value() + d);
                ASSERT_TRUE(k.contains(x));
                sum += a * x;
            }
            const Rational end = upper ? image.hi().value() : image.lo().value();
            EXPECT_TRUE(image.contains(sum));
            EXPECT_LT(abs(Rational(sum - end)), eps);
        }
    }
}
