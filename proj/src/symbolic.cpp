#include "pqa/symbolic.hpp"

#include <sstream>

#include "pqa/errors.hpp"
#include "pqa/text.hpp"

namespace pqa {

std::vector<Response> ResponseProposer::propose(const Vignette& vignette, int n) const {
    std::vector<Response> out = sample(vignette, n);
    out.push_back(canonical_response(vignette, ResponseCategory::NoOptions));
    out.push_back(canonical_response(vignette, ResponseCategory::AllOptions));

    std::vector<Response> unique;
    for (auto& r : out) {
        bool seen = false;
        for (const auto& u : unique)
            if (text::same_utterance(u.text, r.text)) {
                seen = true;
                break;
            }
        if (!seen) unique.push_back(std::move(r));
    }
    return unique;
}

std::vector<Question> QuestionProposer::propose(const Goal& goal, const Vignette& vignette,
                                                const Question& observed, int n) const {
    std::vector<Question> out = sample(goal, vignette, n);
    out.push_back(observed);

    std::vector<Question> unique;
    for (auto& q : out) {
        bool seen = false;
        for (const auto& u : unique)
            if (text::same_utterance(u.text, q.text)) {
                seen = true;
                break;
            }
        if (!seen) unique.push_back(std::move(q));
    }
    return unique;
}

DecisionProblem goal_dp(const Goal& goal, const Vignette& vignette,
                        const UtilityEvaluator& utilities) {
    const std::vector<OptionId> items = vignette.all_items();
    Eigen::VectorXd ratings(static_cast<Eigen::Index>(items.size()));
    for (std::size_t i = 0; i < items.size(); ++i) {
        const double r = utilities.rate(goal, items[i]);
        if (r < 0.0 || r > 100.0)
            throw ModelError("utility rating out of [0,100]");
        ratings(static_cast<Eigen::Index>(i)) = r;
    }
    return availability_dp(goal.description, items, ratings);
}

Response canonical_response(const Vignette& vignette, ResponseCategory category) {
    Response r;
    r.polar_part = Polarity::No;
    std::ostringstream t;
    t << "I'm sorry, we don't have " << vignette.target << ".";
    switch (category) {
    case ResponseCategory::NoOptions:
        break;
    case ResponseCategory::Competitor:
        r.mentioned_options = {vignette.option_named(OptionRole::Competitor)};
        t << " We have " << vignette.option_named(OptionRole::Competitor) << ".";
        break;
    case ResponseCategory::Similar:
        r.mentioned_options = {vignette.option_named(OptionRole::Similar)};
        t << " We have " << vignette.option_named(OptionRole::Similar) << ".";
        break;
    case ResponseCategory::Unrelated:
        r.mentioned_options = {vignette.option_named(OptionRole::Unrelated)};
        t << " We have " << vignette.option_named(OptionRole::Unrelated) << ".";
        break;
    case ResponseCategory::AllOptions: {
        const auto alternatives = vignette.alternative_names();
        r.mentioned_options.insert(alternatives.begin(), alternatives.end());
        t << " We have " << alternatives[0] << ", " << alternatives[1] << " and "
          << alternatives[2] << ".";
        break;
    }
    case ResponseCategory::Unclassified:
        throw ModelError("no canonical response for the unclassified bucket");
    }
    r.text = t.str();
    return r;
}

std::vector<Response> canonical_responses(const Vignette& vignette) {
    std::vector<Response> out;
    for (ResponseCategory c : kCategoryOrder)
        out.push_back(canonical_response(vignette, c));
    return out;
}

std::vector<Question> canonical_questions(const Vignette& vignette) {
    std::vector<Question> out;
    out.push_back(vignette.observed_question());
    for (const auto& option : vignette.options)
        out.push_back(Question::polar(option.name, "Do you have " + option.name + "?"));
    out.push_back(Question::wh_all("What do you have?"));
    return out;
}

std::vector<Goal> canonical_goals(const Vignette& vignette) {
    std::vector<Goal> out;
    for (const auto& item : vignette.all_items()) {
        Goal g;
        g.description = "to get " + item;
        g.preferred_option = item;
        out.push_back(std::move(g));
    }
    return out;
}

double SymbolicUtilityEvaluator::rate(const Goal& goal, const OptionId& option) const {
    return table_.rate(goal.table_key(), option);
}

std::vector<Goal> SymbolicGoalProposer::propose(const Vignette& vignette, int n) const {
    if (n < 1) throw ModelError("goal proposer needs n >= 1");
    auto goals = canonical_goals(vignette);
    if (static_cast<std::size_t>(n) < goals.size())
        goals.resize(static_cast<std::size_t>(n));
    return goals;
}

std::vector<Response> SymbolicResponseProposer::sample(const Vignette& vignette, int n) const {
    if (n < 1) throw ModelError("response proposer needs n >= 1");
    return canonical_responses(vignette);
}

std::vector<Question> SymbolicQuestionProposer::sample(const Goal& /*goal*/,
                                                       const Vignette& vignette, int n) const {
    if (n < 1) throw ModelError("question proposer needs n >= 1");
    auto questions = canonical_questions(vignette);
    // The observed question heads the canonical list; the question set is
    // goal-independent here.
    return questions;
}

} // namespace pqa
