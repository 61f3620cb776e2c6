#include <doctest.h>

#include <random>

#include "pqa/semantics.hpp"

using namespace pqa;

namespace {

const std::set<OptionId> kVocab{"iced tea", "iced coffee", "soda", "chardonnay"};

Response with_mentions(std::set<OptionId> mentions, std::optional<Polarity> polar = std::nullopt) {
    Response r;
    r.text = "test response";
    r.polar_part = polar;
    r.mentioned_options = std::move(mentions);
    return r;
}

} // namespace

TEST_CASE("exactly one of yes/no is true for every world and polar question") {
    SymbolicSemantics sem(kVocab);
    std::mt19937 rng(31);
    const std::vector<OptionId> options(kVocab.begin(), kVocab.end());
    for (int trial = 0; trial < 100; ++trial) {
        WorldState w;
        for (const auto& o : options)
            if (rng() % 2) w.available.insert(o);
        const auto q = Question::polar(options[rng() % options.size()], "Do you have it?");
        const bool yes = sem.is_true_and_safe(w, q, Response::literal_yes(),
                                              SemanticsMode::Pragmatic);
        const bool no = sem.is_true_and_safe(w, q, Response::literal_no(),
                                             SemanticsMode::Pragmatic);
        CHECK(yes != no);
    }
}

TEST_CASE("pragmatic truth is the conjunction of polarity and mentions") {
    SymbolicSemantics sem(kVocab);
    const WorldState w{{"iced coffee", "soda", "chardonnay"}};
    const auto q = Question::polar("iced tea", "Do you have iced tea?");

    Response competitor = with_mentions({"iced coffee"}, Polarity::No);
    competitor.text = "I'm sorry, we don't have iced tea. We have iced coffee.";
    CHECK(sem.is_true_and_safe(w, q, competitor, SemanticsMode::Pragmatic));

    // False polar part sinks it.
    Response wrong_polar = with_mentions({"iced coffee"}, Polarity::Yes);
    CHECK_FALSE(sem.is_true_and_safe(w, q, wrong_polar, SemanticsMode::Pragmatic));

    // An unavailable mention sinks it.
    Response wrong_mention = with_mentions({"iced tea"}, Polarity::No);
    CHECK_FALSE(sem.is_true_and_safe(w, q, wrong_mention, SemanticsMode::Pragmatic));

    CHECK_THROWS_WITH_AS(sem.is_true_and_safe(w, q, with_mentions({"beer"}),
                                              SemanticsMode::Pragmatic),
                         "option out of vocabulary: beer", ModelError);
}

TEST_CASE("base level admits only the austere literal forms") {
    SymbolicSemantics sem(kVocab);
    const WorldState w{{"soda"}};
    const auto polar = Question::polar("soda", "Do you have soda?");

    CHECK(sem.is_true_and_safe(w, polar, Response::literal_yes(), SemanticsMode::BaseLevel));
    CHECK_FALSE(sem.is_true_and_safe(w, polar, with_mentions({"soda"}, Polarity::Yes),
                                     SemanticsMode::BaseLevel));

    const auto wh = Question::wh_all("What do you have?");
    CHECK(sem.is_true_and_safe(w, wh, Response::exhaustive_for(w), SemanticsMode::BaseLevel));
    CHECK_FALSE(sem.is_true_and_safe(w, wh, Response::literal_yes(), SemanticsMode::BaseLevel));
    const WorldState other{{"soda", "iced tea"}};
    CHECK_FALSE(
        sem.is_true_and_safe(w, wh, Response::exhaustive_for(other), SemanticsMode::BaseLevel));

    CHECK_THROWS_AS(sem.is_true_and_safe(w, Question::free_text("Anything cold?"),
                                         Response::literal_yes(), SemanticsMode::BaseLevel),
                    ModelError);
}

TEST_CASE("split semantics routes the two modes independently") {
    struct CountingSemantics final : SemanticEvaluator {
        mutable int calls = 0;
        bool verdict;
        explicit CountingSemantics(bool v) : verdict(v) {}
        bool is_true_and_safe(const WorldState&, const Question&, const Response&,
                              SemanticsMode) const override {
            ++calls;
            return verdict;
        }
    };
    CountingSemantics base(true);
    CountingSemantics pragmatic(false);
    SplitSemantics split(base, pragmatic);

    const WorldState w{{"soda"}};
    const auto q = Question::polar("soda", "Do you have soda?");
    CHECK(split.is_true_and_safe(w, q, Response::literal_yes(), SemanticsMode::BaseLevel));
    CHECK_FALSE(split.is_true_and_safe(w, q, Response::literal_yes(), SemanticsMode::Pragmatic));
    CHECK(base.calls == 1);
    CHECK(pragmatic.calls == 1);
}

TEST_CASE("state renderer lists availability in display order") {
    StateRenderer renderer{"You are a barista.", {"iced tea", "iced coffee", "soda"}};
    CHECK(renderer.render(WorldState{{"soda", "iced coffee"}}) ==
          "You are a barista. The following items are available: iced coffee and soda.");
    CHECK(renderer.render(WorldState{}) == "You are a barista. No items are available.");
    CHECK(renderer.render(WorldState{{"iced tea", "iced coffee", "soda"}}) ==
          "You are a barista. The following items are available: iced tea, iced coffee and "
          "soda.");
    CHECK(renderer.render_with_question(WorldState{{"soda"}},
                                        Question::polar("iced tea", "Do you have iced tea?")) ==
          "You are a barista. The following items are available: soda. Someone asks: 'Do you "
          "have iced tea?'");
}

TEST_CASE("exhaustive response text reads naturally") {
    CHECK(Response::exhaustive_for(WorldState{}).text == "We have nothing.");
    CHECK(Response::exhaustive_for(WorldState{{"soda"}}).text == "We have soda.");
    CHECK(Response::exhaustive_for(WorldState{{"a", "b"}}).text == "We have a and b.");
    CHECK(Response::exhaustive_for(WorldState{{"a", "b", "c"}}).text == "We have a, b and c.");
}
