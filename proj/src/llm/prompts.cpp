#include "pqa/llm/prompts.hpp"

#include <fstream>
#include <sstream>

#include "pqa/errors.hpp"
#include "pqa/llm/client.hpp"

namespace pqa::llm {

const char* prompt_filename(PromptName name) {
    switch (name) {
    case PromptName::UtilityEvaluator: return "utility_evaluator.txt";
    case PromptName::BaseLevelEvaluator: return "base_level_evaluator.txt";
    case PromptName::PragmaticEvaluator: return "pragmatic_evaluator.txt";
    case PromptName::ResponseProposer: return "response_proposer.txt";
    case PromptName::QuestionProposer: return "question_proposer.txt";
    case PromptName::GoalProposer: return "goal_proposer.txt";
    case PromptName::QuestionerWithGoals: return "questioner_with_goals.txt";
    case PromptName::QuestionerWithoutGoals: return "questioner_without_goals.txt";
    case PromptName::OneShotCot: return "one_shot_cot.txt";
    }
    throw ConfigError("unknown prompt");
}

PromptLibrary PromptLibrary::load(const std::filesystem::path& dir) {
    PromptLibrary lib;
    for (PromptName name : kAllPrompts) {
        const auto path = dir / prompt_filename(name);
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("missing prompt template: " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        lib.templates_[static_cast<std::size_t>(name)] = buf.str();
    }
    return lib;
}

const std::string& PromptLibrary::text(PromptName name) const {
    return templates_[static_cast<std::size_t>(name)];
}

std::string PromptLibrary::render(PromptName name,
                                  const std::map<std::string, std::string>& values) const {
    std::string out = text(name);
    for (const auto& [key, value] : values) {
        const std::string token = "{" + key + "}";
        std::size_t pos = 0;
        while ((pos = out.find(token, pos)) != std::string::npos) {
            out.replace(pos, token.size(), value);
            pos += value.size();
        }
    }
    // Anything that still looks like a placeholder is a template/call
    // mismatch.
    std::size_t open = 0;
    while ((open = out.find('{', open)) != std::string::npos) {
        const std::size_t close = out.find('}', open);
        if (close == std::string::npos) break;
        const std::string inner = out.substr(open + 1, close - open - 1);
        if (!inner.empty() && inner.find_first_not_of(
                                  "abcdefghijklmnopqrstuvwxyz_") == std::string::npos)
            throw ConfigError("unresolved placeholder {" + inner + "} in " +
                              prompt_filename(name));
        open = close + 1;
    }
    return out;
}

std::map<std::string, std::string> PromptLibrary::hashes() const {
    std::map<std::string, std::string> out;
    for (PromptName name : kAllPrompts)
        out[prompt_filename(name)] = hex64(fnv1a64(text(name)));
    return out;
}

} // namespace pqa::llm
