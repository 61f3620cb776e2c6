#pragma once

#include "pqa/slots.hpp"

// Fully rule-based implementations of the pluggable slots: the pre-specified
// alternative sets and the human-elicited utility table.

namespace pqa {

/// The five pragmatic answer templates, one per category, in canonical
/// category order: "I'm sorry, we don't have {target}. {continuation}".
Response canonical_response(const Vignette& vignette, ResponseCategory category);
std::vector<Response> canonical_responses(const Vignette& vignette);

/// Polar questions about each item plus a wh question about everything.
std::vector<Question> canonical_questions(const Vignette& vignette);

/// One goal per item (target first), each preferring that item.
std::vector<Goal> canonical_goals(const Vignette& vignette);

class SymbolicUtilityEvaluator final : public UtilityEvaluator {
public:
    explicit SymbolicUtilityEvaluator(const UtilityTable& table) : table_(table) {}
    double rate(const Goal& goal, const OptionId& option) const override;

private:
    const UtilityTable& table_;
};

class SymbolicGoalProposer final : public GoalProposer {
public:
    std::vector<Goal> propose(const Vignette& vignette, int n) const override;
};

class SymbolicResponseProposer final : public ResponseProposer {
public:
    std::vector<Response> sample(const Vignette& vignette, int n) const override;
};

class SymbolicQuestionProposer final : public QuestionProposer {
public:
    std::vector<Question> sample(const Goal& goal, const Vignette& vignette,
                                 int n) const override;
};

} // namespace pqa
