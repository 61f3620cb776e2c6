#pragma once

#include "pqa/llm/client.hpp"
#include "pqa/llm/prompts.hpp"
#include "pqa/semantics.hpp"
#include "pqa/slots.hpp"

// LLM-backed implementations of the pluggable slots. Each instance is bound
// to an iteration index so the repeated simulation runs draw independent
// samples through the cache.

namespace pqa::llm {

struct ModuleContext {
    ChatClient* client = nullptr;
    const PromptLibrary* prompts = nullptr;
    int iteration = 0;
};

class LlmSemanticEvaluator final : public SemanticEvaluator {
public:
    LlmSemanticEvaluator(ModuleContext ctx, StateRenderer renderer)
        : ctx_(ctx), renderer_(std::move(renderer)) {}

    bool is_true_and_safe(const WorldState& world, const Question& question,
                          const Response& response, SemanticsMode mode) const override;

private:
    ModuleContext ctx_;
    StateRenderer renderer_;
};

class LlmUtilityEvaluator final : public UtilityEvaluator {
public:
    explicit LlmUtilityEvaluator(ModuleContext ctx) : ctx_(ctx) {}
    double rate(const Goal& goal, const OptionId& option) const override;

private:
    ModuleContext ctx_;
};

class LlmGoalProposer final : public GoalProposer {
public:
    explicit LlmGoalProposer(ModuleContext ctx) : ctx_(ctx) {}
    std::vector<Goal> propose(const Vignette& vignette, int n) const override;

private:
    ModuleContext ctx_;
};

class LlmResponseProposer final : public ResponseProposer {
public:
    explicit LlmResponseProposer(ModuleContext ctx) : ctx_(ctx) {}
    std::vector<Response> sample(const Vignette& vignette, int n) const override;

private:
    ModuleContext ctx_;
};

class LlmQuestionProposer final : public QuestionProposer {
public:
    explicit LlmQuestionProposer(ModuleContext ctx) : ctx_(ctx) {}
    std::vector<Question> sample(const Goal& goal, const Vignette& vignette,
                                 int n) const override;

private:
    ModuleContext ctx_;
};

class LlmQuestionLikelihood final : public QuestionLikelihoodScorer {
public:
    explicit LlmQuestionLikelihood(ModuleContext ctx) : ctx_(ctx) {}
    double score(const std::optional<Goal>& goal, const Vignette& vignette,
                 const Question& question) const override;

private:
    ModuleContext ctx_;
};

/// Prompt of the monolithic chain-of-thought model: the worked example
/// followed by the vignette under test.
std::string one_shot_cot_prompt(const PromptLibrary& prompts, const Vignette& vignette);

/// The situation text used for questioner-side prompts (goal proposer,
/// question proposer, prompted questioner): scene plus question, without
/// the stock listing.
std::string questioner_view(const Vignette& vignette);

} // namespace pqa::llm
