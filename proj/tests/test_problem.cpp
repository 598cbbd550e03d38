// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "feqn/error.hpp"
#include "feqn/problem.hpp"
#include "support.hpp"

using namespace feqn;
using feqn::testing::Gen;
using feqn::testing::I;
using feqn::testing::Q;

namespace {

std::string parse_error(std::string_view text, std::optional<Command> cmd = std::nullopt) {
    try {
        parse_spec(text, cmd);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse) << e.what();
        return e.what();
    }
    ADD_FAILURE() << "accepted: " << text;
    return {};
}

bool mentions(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST(ParseSpec, InvarianceScenario) {
    const auto s = parse_spec(
        R"({"command":"check-invariance","domain":{"type":"interval","lo":"-1","hi":"2"},)"
        R"("equation":{"alphas":["1/4","-1/5"],"betas":["1/4","-1/5"]}})");
    EXPECT_EQ(s.command, Command::CheckInvariance);
    EXPECT_EQ(std::get<Interval>(*s.domain), I("-1", "2"));
    EXPECT_EQ(s.equation->alphas, (Vector{Q("1/4"), Q("-1/5")}));
}

TEST(ParseSpec, InfiniteEndpoints) {
    const auto s = parse_spec(
        R"({"command":"shrink","domain":{"type":"interval","lo":"-inf","hi":"inf"},"equation":{"alphas":["1/2","-1/4"]}})");
    EXPECT_EQ(std::get<Interval>(*s.domain), Interval::whole_line());
}

TEST(ParseSpec, DecimalLiteralsRejectedWithPosition) {
    const auto msg = parse_error("{\"command\":\"characterize\",\n \"equation\":{\"alphas\":[\"0.25\",\"1/2\"],\"betas\":[\"1\",\"1\"]}}");
    EXPECT_TRUE(mentions(msg, "0.25")) << msg;
    EXPECT_TRUE(mentions(msg, "line 2, column 24")) << msg;
    EXPECT_TRUE(mentions(msg, "/equation/alphas/0")) << msg;
    const auto raw = parse_error(R"({"command":"characterize","equation":{"alphas":[0.25,"1/2"],"betas":["1","1"]}})");
    EXPECT_TRUE(mentions(raw, "non-rational numeric literal")) << raw;
    EXPECT_TRUE(mentions(raw, "0.25")) << raw;
}

TEST(ParseSpec, SchemaErrors) {
    EXPECT_TRUE(mentions(parse_error(R"({"command":"characterize","equation":{"alphas":["1","1"]},"extra":1})"),
                         "unknown field \"extra\""));
    EXPECT_TRUE(mentions(parse_error(R"({"command":"characterize","equation":{"alphas":["1","1"]}})"), "betas"));
    EXPECT_TRUE(mentions(parse_error(R"({"command":"characterize"})"), "equation"));
    EXPECT_TRUE(mentions(parse_error(R"({"command":"frobnicate"})"), "frobnicate"));
    EXPECT_TRUE(mentions(parse_error(R"({"command":"characterize","equation":{"alphas":["1","0"],"betas":["1","1"]}})"),
                         "/equation/alphas/1"));
    EXPECT_TRUE(mentions(parse_error(R"({"equation":{"alphas":["1","1"],"betas":["1","1"]}})", Command::Shrink),
                         "domain"));
    EXPECT_TRUE(mentions(parse_error(R"({"command":"shrink","domain":{"type":"interval","lo":"-1","hi":"1"},"equation":{"alphas":["1","1"]}})",
                                     Command::Characterize),
                         "shrink"));
    EXPECT_TRUE(mentions(parse_error(R"({"command":"shrink","domain":{"type":"box","sides":[]},"equation":{"alphas":["1/2","1/2"]}})"),
                         "/domain"));
    EXPECT_TRUE(mentions(parse_error(R"({"command":"characterize","equation":{"alphas":["1","1"],"betas":["1","1"]},"trials":10})"),
                         "not used"));
    EXPECT_TRUE(mentions(parse_error(R"({"command":"characterize","equation":{"alphas":["1","1"],"alphas":["1","1"]}})"),
                         "alphas"));
}

TEST(ParseSpec, SyntaxErrorsCarryPosition) {
    const auto msg = parse_error("{\n  \"command\": \"characterize\",\n  \"equation\": {\n}");
    EXPECT_TRUE(mentions(msg, "line 4")) << msg;
    EXPECT_TRUE(mentions(msg, "syntax")) << msg;
}

TEST(ParseSpec, FiniteGroupFields) {
    const auto s = parse_spec(R"({"command":"weighted-check","group":{"moduli":[4]},"alphas":[2,2],)"
                              R"("functions":{"f":[0,1,0,0],"g":[[0,0,0,0],[0,0,0,0]]}})");
    EXPECT_EQ(s.group->order(), 4u);
    EXPECT_EQ(s.functions->f, (std::vector<std::size_t>{0, 1, 0, 0}));
    EXPECT_TRUE(mentions(parse_error(R"({"command":"weighted-check","group":{"moduli":[4]},"alphas":[2,2],)"
                                     R"("functions":{"f":[0,1,0,4],"g":[[0,0,0,0],[0,0,0,0]]}})"),
                         "/functions/f/3"));
    EXPECT_TRUE(mentions(parse_error(R"({"command":"weighted-check","group":{"moduli":[4]},"alphas":[2,2,2],)"
                                     R"("functions":{"f":[0,1,0,0],"g":[[0,0,0,0],[0,0,0,0]]}})"),
                         "/alphas"));
}

TEST(RenderSpec, RoundTripExamples) {
    const char* docs[] = {
        R"({"command":"check-invariance","domain":{"type":"interval","lo":"-1","hi":"2"},"equation":{"alphas":["1/4","-1/5"],"betas":["1/4","-1/5"]}})",
        R"({"command":"shrink","domain":{"type":"interval","lo":"-inf","hi":"inf"},"equation":{"alphas":["1/2","-1/4"]},"seed":3})",
        R"({"command":"verify","domain":{"type":"box","sides":[{"lo":"0","hi":"inf"},{"type":"interval","lo":"0","hi":"inf"}]},"equation":{"alphas":["1","2"],"betas":["1","2"]},"candidate":{"A":[["1","2"]],"b":["0"]},"trials":5})",
        R"({"command":"verify","domain":{"type":"cone","generators":[["1","0"],["1","1"]]},"equation":{"alphas":["1","2"],"betas":["1","2"]},"candidate":{"A":[["1","2"]],"b":["0"]}})",
        R"({"command":"extend","domain":{"type":"interval","lo":"0","hi":"1"},"equation":{"alphas":["1/2","1/2"],"betas":["1/2","1/2"]},"f":{"affine":{"A":[["3"]],"b":["7"]}},"cover":{"anchors":[["1/2"]],"radius":"1/64"}})",
        R"({"command":"extend","domain":{"type":"interval","lo":"0","hi":"1"},"equation":{"alphas":["1/2","1/2"],"betas":["1/2","1/2"]},"f":{"table":{"1/2":"1","1/4":["2"]}}})",
        R"({"command":"extend","pexider":{"patches":[{"base":[["1/4"],["1/4"]],"radius":"1/8"}],"f":{"1/2":"2"},"g":[{"1/4":"1"},{"1/4":"1"}],"samples":[[["1/4"],["1/4"]]]}})",
        R"({"command":"enumerate-finite","group":{"moduli":[2,3]},"codomain":{"moduli":[6]}})",
        R"({"command":"weighted-check","group":{"moduli":[4]},"alphas":[2,2],"functions":{"f":[0,1,0,0],"g":[[0,0,0,0],[0,0,0,0]]}})",
    };
    for (const char* doc : docs) {
        const auto s = parse_spec(doc);
        const auto text = render_spec(s);
        EXPECT_EQ(parse_spec(text), s) << text;
        EXPECT_EQ(render_spec(parse_spec(text)), text);
    }
}

TEST(RenderSpec, RoundTripProperty) {
    Gen gen(51);
    for (int trial = 0; trial < 200; ++trial) {
        ProblemSpec s;
        s.command = Command::Verify;
        EquationInput eq;
        const std::size_t n = static_cast<std::size_t>(gen.integer(2, 4));
        for (std::size_t i = 0; i < n; ++i)
            eq.alphas.push_back(gen.nonzero(1000, 1000));
        eq.betas = eq.alphas;
        s.equation = eq;
        const Rational lo = gen.rational(1000, 1000);
        s.domain = gen.coin() ? Domain(Interval(lo, Rational(lo + gen.positive()))) : Domain(Interval(Bound::neg_inf(), lo));
        s.candidate = AffineMap(gen.matrix(2, 1), gen.vector(2));
        if (gen.coin())
            s.trials = static_cast<std::uint64_t>(gen.integer(1, 5000));
        if (gen.coin())
            s.seed = static_cast<std::uint64_t>(gen.integer(0, 1 << 30));
        EXPECT_EQ(parse_spec(render_spec(s)), s);
    }
}

TEST(Run, CharacterizeJensenReport) {
    const auto s = parse_spec(R"({"command":"characterize","equation":{"alphas":["1/2","1/2"],"betas":["1/2","1/2"]}})");
    const auto r = run(s);
    EXPECT_EQ(r.body["schema"], "1");
    EXPECT_EQ(r.body["family"]["offset_free"], true);
    EXPECT_EQ(r.body["seed"], kDefaultSeed);
}

TEST(Run, WeightedCheckZ4Report) {
    const auto s = parse_spec(R"({"command":"weighted-check","group":{"moduli":[4]},"alphas":[2,2],)"
                              R"("functions":{"f":[0,1,0,0],"g":[[0,0,0,0],[0,0,0,0]]}})");
    const auto r = run(s);
    EXPECT_EQ(r.body["equation_holds"], true);
    EXPECT_EQ(r.body["decomposition"], "NONE");
}

TEST(Run, ExtendJensenReport) {
    const auto s = parse_spec(R"({"command":"extend","domain":{"type":"interval","lo":"0","hi":"1"},)"
                              R"("equation":{"alphas":["1/2","1/2"],"betas":["1/2","1/2"]},"f":{"affine":{"A":[["3"]],"b":["7"]}}})");
    const auto r = run(s);
    EXPECT_EQ(r.body["A"], nlohmann::ordered_json::parse(R"([["3"]])"));
    EXPECT_EQ(r.body["b"], nlohmann::ordered_json::parse(R"(["7"])"));
}

TEST(Run, ByteIdenticalGivenSeed) {
    const char* docs[] = {
        R"({"command":"verify","domain":{"type":"interval","lo":"0","hi":"1"},"equation":{"alphas":["1/2","1/2"],"betas":["1","1"]},"candidate":{"A":[["1"]],"b":["1"]}})",
        R"({"command":"check-invariance","domain":{"type":"interval","lo":"0","hi":"1"},"equation":{"alphas":["1","1"]}})",
        R"({"command":"enumerate-finite","group":{"moduli":[2,2]}})",
    };
    for (const char* doc : docs) {
        const auto s = parse_spec(doc);
        EXPECT_EQ(run(s, 9).to_json(), run(s, 9).to_json());
        EXPECT_EQ(run(s).to_json(), run(s, kDefaultSeed).to_json());
    }
    const auto v = parse_spec(docs[0]);
    EXPECT_NE(run(v, 1).to_json(), run(v, 2).to_json());
}

// The text rendering carries every value of the JSON rendering; command and verdict sit in the headline.
TEST(Run, TextAgreesWithJson) {
    const auto s = parse_spec(R"({"command":"shrink","domain":{"type":"interval","lo":"-1","hi":"2"},"equation":{"alphas":["1/4","-1/5"]}})");
    const auto r = run(s);
    const auto text = r.to_text();
    for (const auto& [key, value] : r.body.items()) {
        if (value.is_object())
            continue;
        if (key != "command" && key != "verdict")
            EXPECT_TRUE(mentions(text, key)) << key;
        EXPECT_TRUE(mentions(text, value.is_string() ? value.get<std::string>() : value.dump())) << key;
    }
}

TEST(Run, EngineErrorsSurface) {
    const auto s = parse_spec(R"({"command":"verify","domain":{"type":"interval","lo":"0","hi":"1"},)"
                              R"("equation":{"alphas":["1","1"],"betas":["1","1"]},"candidate":{"A":[["1"]],"b":["1"]}})");
    try {
        run(s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Precondition);
    }
}
