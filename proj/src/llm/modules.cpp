#include "pqa/llm/modules.hpp"

#include "pqa/categorize.hpp"
#include "pqa/llm/parse.hpp"
#include "pqa/text.hpp"

namespace pqa::llm {

bool LlmSemanticEvaluator::is_true_and_safe(const WorldState& world, const Question& question,
                                            const Response& response,
                                            SemanticsMode mode) const {
    const PromptName name = mode == SemanticsMode::BaseLevel
                                ? PromptName::BaseLevelEvaluator
                                : PromptName::PragmaticEvaluator;
    const std::string prompt =
        ctx_.prompts->render(name, {{"state", renderer_.render_with_question(world, question)},
                                    {"utterance", response.text}});
    return parse_yes_no(ctx_.client->chat(prompt, ctx_.iteration)).value;
}

double LlmUtilityEvaluator::rate(const Goal& goal, const OptionId& option) const {
    const std::string prompt = ctx_.prompts->render(
        PromptName::UtilityEvaluator, {{"goal", goal.description}, {"option", option}});
    return parse_rating_0_100(ctx_.client->chat(prompt, ctx_.iteration)).value;
}

std::string questioner_view(const Vignette& vignette) {
    return vignette.setting + " Someone asks: '" + vignette.question_text + "'";
}

std::vector<Goal> LlmGoalProposer::propose(const Vignette& vignette, int n) const {
    if (n < 1) throw ModelError("goal proposer needs n >= 1");
    const std::string prompt =
        ctx_.prompts->render(PromptName::GoalProposer, {{"num_samples", std::to_string(n)}}) +
        "\n\n" + questioner_view(vignette);
    const auto items = parse_comma_list(ctx_.client->chat(prompt, ctx_.iteration), n);
    if (items.size() < static_cast<std::size_t>(n))
        throw ParseError("expected " + std::to_string(n) + " goals, parsed " +
                         std::to_string(items.size()));
    std::vector<Goal> goals;
    for (const auto& item : items) {
        Goal g;
        g.description = item;
        goals.push_back(std::move(g));
    }
    return goals;
}

std::vector<Response> LlmResponseProposer::sample(const Vignette& vignette, int n) const {
    if (n < 1) throw ModelError("response proposer needs n >= 1");
    std::string options_list;
    for (const auto& name : vignette.alternative_names()) {
        if (!options_list.empty()) options_list += ", ";
        options_list += name;
    }
    const std::string prompt =
        ctx_.prompts->render(PromptName::ResponseProposer,
                             {{"question", vignette.question_text},
                              {"options", options_list},
                              {"num_samples", std::to_string(n)}});
    const auto items = parse_numbered_list(ctx_.client->chat(prompt, ctx_.iteration), n);
    std::vector<Response> out;
    for (const auto& item : items) out.push_back(derive_response(item, vignette));
    return out;
}

std::vector<Question> LlmQuestionProposer::sample(const Goal& goal, const Vignette& vignette,
                                                  int n) const {
    if (n < 1) throw ModelError("question proposer needs n >= 1");
    const std::string prompt =
        ctx_.prompts->render(PromptName::QuestionProposer,
                             {{"goal", goal.description},
                              {"context", vignette.setting},
                              {"num_samples", std::to_string(n)}});
    const auto items = parse_numbered_list(ctx_.client->chat(prompt, ctx_.iteration), n);
    std::vector<Question> out;
    for (const auto& item : items) out.push_back(derive_question(item, vignette));
    return out;
}

double LlmQuestionLikelihood::score(const std::optional<Goal>& goal, const Vignette& vignette,
                                    const Question& question) const {
    std::map<std::string, std::string> values{{"state", vignette.setting},
                                              {"utterance", question.text}};
    PromptName name = PromptName::QuestionerWithoutGoals;
    if (goal) {
        name = PromptName::QuestionerWithGoals;
        values["goal"] = goal->description;
    }
    const std::string prompt = ctx_.prompts->render(name, values);
    return parse_likelihood(ctx_.client->chat(prompt, ctx_.iteration)).value;
}

std::string one_shot_cot_prompt(const PromptLibrary& prompts, const Vignette& vignette) {
    return prompts.render(PromptName::OneShotCot, {}) + "\n\n" + vignette.context +
           "\nSomeone asks: " + vignette.question_text + "\n\nLet's think step by step.";
}

} // namespace pqa::llm
