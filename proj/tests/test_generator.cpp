#include <catch2/catch_amalgamated.hpp>

#include "wefkit/generator.hpp"

using namespace wefkit;

TEST_CASE("parse_octal follows the lowest-degree-first convention", "[generator]") {
    CHECK(parse_octal("7") == BitPoly{1, 1, 1});  // 1 + D + D^2
    CHECK(parse_octal("1") == BitPoly{1});
    CHECK(parse_octal("5") == BitPoly{1, 0, 1});  // 1 + D^2
    CHECK(parse_octal("0") == BitPoly{});
    CHECK(parse_octal("13") == BitPoly{1, 1, 0, 1});  // 1 + D + D^3
    CHECK(parse_octal("05") == BitPoly{1, 0, 1});
}

TEST_CASE("parse_octal rejects bad input", "[generator]") {
    CHECK_THROWS_AS(parse_octal(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_octal("8"), std::invalid_argument);
    CHECK_THROWS_AS(parse_octal("5/7"), std::invalid_argument);
    CHECK_THROWS_AS(parse_octal("a"), std::invalid_argument);
}

TEST_CASE("generator text parses both supported rates", "[generator]") {
    const auto pcc = GeneratorSpec::from_text("1,5/7");
    CHECK(pcc.rate_kind == RateKind::kHalfSystematic);
    CHECK(pcc.num_inputs() == 1);
    CHECK(pcc.memory == 2);
    CHECK(pcc.numerators == std::vector<BitPoly>{BitPoly{1, 0, 1}});
    CHECK(pcc.denominator == BitPoly{1, 1, 1});

    const auto bcc = GeneratorSpec::from_text("1,0,1/7;0,1,5/7");
    CHECK(bcc.rate_kind == RateKind::kTwoThirdsSystematic);
    CHECK(bcc.num_inputs() == 2);
    CHECK(bcc.memory == 2);
    REQUIRE(bcc.numerators.size() == 2);
    CHECK(bcc.numerators[0] == BitPoly{1});
    CHECK(bcc.numerators[1] == BitPoly{1, 0, 1});

    CHECK_NOTHROW(GeneratorSpec::from_text("  1 , 0 , 1/7 ; 0 , 1 , 5/7 "));
}

TEST_CASE("generator validation", "[generator]") {
    // denominator with even constant term is not a realizable recursive encoder
    CHECK_THROWS_AS(GeneratorSpec::from_text("1,5/6"), std::invalid_argument);
    // numerator degree above the register length
    CHECK_THROWS_AS(GeneratorSpec::from_text("1,15/7"), std::invalid_argument);
    // systematic part must be the identity
    CHECK_THROWS_AS(GeneratorSpec::from_text("0,5/7"), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSpec::from_text("1,1,1/7;0,1,5/7"), std::invalid_argument);
    // row shape mismatches
    CHECK_THROWS_AS(GeneratorSpec::from_text("1,0,1/7"), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSpec::from_text("1,0,1/7;0,1,5/7;0,0,1/7"), std::invalid_argument);
    // rows must share one feedback polynomial
    CHECK_THROWS_AS(GeneratorSpec::from_text("1,0,1/7;0,1,5/3"), std::invalid_argument);
    // memory zero (denominator 1) is not supported
    CHECK_THROWS_AS(GeneratorSpec::from_text("1,1/1"), std::invalid_argument);
    // numerator count enforced at the type level as well
    CHECK_THROWS_AS(GeneratorSpec(RateKind::kTwoThirdsSystematic, {BitPoly{1}}, BitPoly{1, 1, 1}),
                    std::invalid_argument);
}
