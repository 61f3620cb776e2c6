#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>

// Prompt templates are external text files with {name} placeholders; they
// are part of the experimental material and never inlined in code.

namespace pqa::llm {

enum class PromptName {
    UtilityEvaluator,
    BaseLevelEvaluator,
    PragmaticEvaluator,
    ResponseProposer,
    QuestionProposer,
    GoalProposer,
    QuestionerWithGoals,
    QuestionerWithoutGoals,
    OneShotCot,
};

inline constexpr std::array<PromptName, 9> kAllPrompts{
    PromptName::UtilityEvaluator,  PromptName::BaseLevelEvaluator,
    PromptName::PragmaticEvaluator, PromptName::ResponseProposer,
    PromptName::QuestionProposer,  PromptName::GoalProposer,
    PromptName::QuestionerWithGoals, PromptName::QuestionerWithoutGoals,
    PromptName::OneShotCot,
};

const char* prompt_filename(PromptName name);

class PromptLibrary {
public:
    static PromptLibrary load(const std::filesystem::path& dir);

    const std::string& text(PromptName name) const;

    /// Substitutes every {key}; an unresolved placeholder is an error.
    std::string render(PromptName name,
                       const std::map<std::string, std::string>& values) const;

    /// Content hashes per template file, for run manifests.
    std::map<std::string, std::string> hashes() const;

private:
    std::array<std::string, 9> templates_;
};

} // namespace pqa::llm
