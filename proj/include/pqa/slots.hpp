#pragma once

#include <optional>
#include <vector>

#include "pqa/corpus.hpp"
#include "pqa/semantics.hpp"
#include "pqa/types.hpp"

// The pluggable slots of the architecture. Implementations must be safely
// shareable across concurrent simulation workers.

namespace pqa {

class UtilityEvaluator {
public:
    virtual ~UtilityEvaluator() = default;
    /// 0-100 preference rating for receiving `option` given `goal`.
    virtual double rate(const Goal& goal, const OptionId& option) const = 0;
};

class GoalProposer {
public:
    virtual ~GoalProposer() = default;
    /// Plausible questioner goals for the vignette's question.
    virtual std::vector<Goal> propose(const Vignette& vignette, int n) const = 0;
};

class ResponseProposer {
public:
    virtual ~ResponseProposer() = default;
    /// Raw proposals, before the rule-based post-set.
    virtual std::vector<Response> sample(const Vignette& vignette, int n) const = 0;
    /// Proposals plus rule-appended no-options and all-options responses,
    /// de-duplicated by normalized text.
    std::vector<Response> propose(const Vignette& vignette, int n) const;
};

class QuestionProposer {
public:
    virtual ~QuestionProposer() = default;
    /// Raw question samples for a goal; also the basis of the sample-based
    /// question-likelihood estimate.
    virtual std::vector<Question> sample(const Goal& goal, const Vignette& vignette,
                                         int n) const = 0;
    /// Samples plus the observed question, de-duplicated by normalized text.
    std::vector<Question> propose(const Goal& goal, const Vignette& vignette,
                                  const Question& observed, int n) const;
};

class QuestionLikelihoodScorer {
public:
    virtual ~QuestionLikelihoodScorer() = default;
    /// Raw elicited likelihood in [0,1] of someone asking `question`,
    /// optionally conditioned on a goal. Renormalized downstream.
    virtual double score(const std::optional<Goal>& goal, const Vignette& vignette,
                         const Question& question) const = 0;
};

/// Decision problem for a goal: worlds span every availability combination
/// of the vignette's items, utilities come from the evaluator's ratings and
/// an unavailable item is worth nothing.
DecisionProblem goal_dp(const Goal& goal, const Vignette& vignette,
                        const UtilityEvaluator& utilities);

} // namespace pqa
