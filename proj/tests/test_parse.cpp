#include <doctest.h>

#include <random>

#include "pqa/llm/parse.hpp"

using namespace pqa;
using namespace pqa::llm;

TEST_CASE("parse_rating_0_100 fixtures") {
    CHECK(parse_rating_0_100("85").value == 85.0);
    CHECK(parse_rating_0_100("85").strict);
    CHECK(parse_rating_0_100("Rating: 42.5").value == 42.5);
    CHECK_FALSE(parse_rating_0_100("Rating: 42.5").strict);
    CHECK(parse_rating_0_100("  100 \n").value == 100.0);
    CHECK_THROWS_AS(parse_rating_0_100("very happy"), ParseError);
    CHECK_THROWS_AS(parse_rating_0_100("120"), ParseError);
    CHECK_THROWS_AS(parse_rating_0_100("-5"), ParseError);
    CHECK_THROWS_AS(parse_rating_0_100(""), ParseError);
}

TEST_CASE("parse_yes_no fixtures") {
    CHECK(parse_yes_no("Yes.").value);
    CHECK(parse_yes_no("Yes.").strict);
    CHECK_FALSE(parse_yes_no("no").value);
    CHECK(parse_yes_no("  'yes'  ").value);
    CHECK(parse_yes_no("NO!").value == false);
    CHECK(parse_yes_no("Yes, that is correct.").value);
    CHECK_FALSE(parse_yes_no("Yes, that is correct.").strict);
    CHECK_THROWS_AS(parse_yes_no("maybe"), ParseError);
    CHECK_THROWS_AS(parse_yes_no("yesterday"), ParseError);
    CHECK_THROWS_AS(parse_yes_no(""), ParseError);
}

TEST_CASE("parse_numbered_list fixtures") {
    const auto two = parse_numbered_list("1. A\n2. B", 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == "A");
    CHECK(two[1] == "B");

    const auto paren = parse_numbered_list("1) First thing\n2) Second thing\n3) Third", 2);
    REQUIRE(paren.size() == 2); // truncated to expected_n
    CHECK(paren[0] == "First thing");

    const auto bullets = parse_numbered_list("- A\n- B", 2);
    REQUIRE(bullets.size() == 2);
    CHECK(bullets[0] == "A");

    const auto lines = parse_numbered_list("alpha\nbeta\n", 5);
    CHECK(lines.size() == 2);

    // Preamble lines are ignored when numbering is present.
    const auto framed = parse_numbered_list("Sure! Here you go:\n1. One\n2. Two", 5);
    REQUIRE(framed.size() == 2);
    CHECK(framed[0] == "One");

    CHECK_THROWS_AS(parse_numbered_list("", 3), ParseError);
    CHECK_THROWS_AS(parse_numbered_list("\n\n \n", 3), ParseError);
}

TEST_CASE("parse_likelihood fixtures") {
    CHECK(parse_likelihood("0.7").value == 0.7);
    CHECK(parse_likelihood("0.7").strict);
    CHECK(parse_likelihood("Likelihood: 0.05").value == 0.05);
    CHECK(parse_likelihood("70%").value == doctest::Approx(0.7));
    CHECK(parse_likelihood("1").value == 1.0);
    CHECK_THROWS_AS(parse_likelihood("1.2"), ParseError);
    CHECK_THROWS_AS(parse_likelihood("quite likely"), ParseError);
}

TEST_CASE("parse_comma_list fixtures") {
    const auto goals = parse_comma_list("get a cold drink, avoid alcohol, learn the menu", 3);
    REQUIRE(goals.size() == 3);
    CHECK(goals[0] == "get a cold drink");
    CHECK(goals[2] == "learn the menu");

    // Duplicates collapse case-insensitively.
    const auto dedup = parse_comma_list("tea, Tea, coffee", 3);
    CHECK(dedup.size() == 2);

    const auto numbered = parse_comma_list("1. alpha\n2. beta", 2);
    CHECK(numbered.size() == 2);

    CHECK_THROWS_AS(parse_comma_list(",,,", 2), ParseError);
}

TEST_CASE("extract_cot_answer") {
    CHECK(extract_cot_answer("Thinking... You reply: \n\nNo, sorry.") == "No, sorry.");
    CHECK(extract_cot_answer("Step one.\n\nStep two.\n\nFinal answer here.") ==
          "Final answer here.");
    CHECK(extract_cot_answer("Just the answer.") == "Just the answer.");
    CHECK(extract_cot_answer("you REPLY: later text") == "later text");
}

TEST_CASE("parsers are total over arbitrary bytes") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::string junk;
        const std::size_t len = rng() % 64;
        for (std::size_t i = 0; i < len; ++i)
            junk.push_back(static_cast<char>(rng() % 256));
        // Value or ParseError, never a crash or another exception type.
        try {
            (void)parse_rating_0_100(junk);
        } catch (const ParseError&) {
        }
        try {
            (void)parse_yes_no(junk);
        } catch (const ParseError&) {
        }
        try {
            (void)parse_numbered_list(junk, 3);
        } catch (const ParseError&) {
        }
        try {
            (void)parse_likelihood(junk);
        } catch (const ParseError&) {
        }
        try {
            (void)parse_comma_list(junk, 3);
        } catch (const ParseError&) {
        }
        (void)extract_cot_answer(junk);
    }
}
