#include <catch2/catch_amalgamated.hpp>

#include "lida/cli.hpp"

using namespace lida;
using namespace lida::cli;
using Catch::Approx;

TEST_CASE("policy spec grammar") {
    CHECK(parse_policy_spec("always").kind == DecisionPolicy::Kind::AlwaysEvaluate);
    CHECK(parse_policy_spec("never").kind == DecisionPolicy::Kind::NeverEvaluate);

    auto c = parse_policy_spec("const:0.3");
    CHECK(c.kind == DecisionPolicy::Kind::ConstantPh);
    CHECK(c.ph == Approx(0.3));
    CHECK(c.rule == RegretRule::FullRegret);

    auto cs = parse_policy_spec("const:0.25:simplified");
    CHECK(cs.rule == RegretRule::Simplified);
    CHECK(cs.ph == Approx(0.25));

    auto a = parse_policy_spec("adaptive:0.5");
    CHECK(a.kind == DecisionPolicy::Kind::AdaptiveBound);
    CHECK(a.cap == Approx(0.5));

    CHECK(parse_policy_spec("adaptive:1:simplified").rule == RegretRule::Simplified);

    CHECK_THROWS_AS(parse_policy_spec(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy_spec("sometimes"), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy_spec("const:"), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy_spec("const:x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy_spec("const:0.3junk"), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy_spec("const:1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy_spec("const:-0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy_spec("const:0.3:fast"), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy_spec("adaptive:2"), std::invalid_argument);
}

TEST_CASE("timing spec grammar") {
    CHECK(parse_timing_spec("calibrate").kind == TimingSpec::Kind::Calibrate);

    auto f = parse_timing_spec("fixed:1.5,3,0.25");
    CHECK(f.kind == TimingSpec::Kind::Fixed);
    CHECK(f.t1 == Approx(1.5));
    CHECK(f.t2 == Approx(3.0));
    CHECK(f.te == Approx(0.25));

    auto e = parse_timing_spec("ema:0.05");
    CHECK(e.kind == TimingSpec::Kind::Ema);
    CHECK(e.decay == Approx(0.05));

    CHECK_THROWS_AS(parse_timing_spec(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_timing_spec("fixed:1,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_timing_spec("fixed:1,2,3,4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_timing_spec("fixed:1,2,x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_timing_spec("fixed:0,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_timing_spec("ema:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_timing_spec("ema:1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_timing_spec("guess"), std::invalid_argument);
}

TEST_CASE("exit codes are distinct and stable") {
    CHECK(kExitOk == 0);
    CHECK(kExitUnsolvable == 2);
    CHECK(kExitCapExceeded == 3);
    CHECK(kExitParseError == 4);
    CHECK(kExitUsage == 64);
}
