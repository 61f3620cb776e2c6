#include "pqa/semantics.hpp"

#include <sstream>

#include "pqa/errors.hpp"

namespace pqa {

bool SymbolicSemantics::is_true(const WorldState& world, const Question& question,
                                const Response& response) const {
    for (const auto& option : response.mentioned_options)
        if (!vocabulary_.count(option))
            throw ModelError("option out of vocabulary: " + option);

    if (response.exhaustive)
        return response.mentioned_options == world.available;

    if (response.polar_part) {
        if (question.kind == QuestionKind::Polar) {
            const bool available = world.has(*question.queried_option);
            const bool said_yes = *response.polar_part == Polarity::Yes;
            if (said_yes != available) return false;
        }
        // A polar part has no symbolic truth conditions under non-polar
        // questions; it is ignored there.
    }

    for (const auto& option : response.mentioned_options)
        if (!world.has(option)) return false;
    return true;
}

bool SymbolicSemantics::is_true_and_safe(const WorldState& world, const Question& question,
                                         const Response& response, SemanticsMode mode) const {
    if (mode == SemanticsMode::Pragmatic)
        return is_true(world, question, response);

    // Base level: the answer must be the austere literal form for the
    // question kind, on top of being true.
    switch (question.kind) {
    case QuestionKind::Polar:
        if (!response.polar_part || response.exhaustive || !response.mentioned_options.empty())
            return false;
        break;
    case QuestionKind::WhAll:
        if (!response.exhaustive) return false;
        break;
    case QuestionKind::FreeText:
        throw ModelError("free-text question has no symbolic base-level semantics");
    }
    return is_true(world, question, response);
}

std::string StateRenderer::render(const WorldState& world) const {
    std::ostringstream out;
    out << setting;
    if (!setting.empty() && setting.back() != ' ') out << ' ';
    bool any = false;
    std::ostringstream list;
    std::size_t count = 0;
    std::size_t total = 0;
    for (const auto& option : display_order)
        if (world.has(option)) ++total;
    for (const auto& option : display_order) {
        if (!world.has(option)) continue;
        if (any) list << (count + 1 == total ? " and " : ", ");
        list << option;
        any = true;
        ++count;
    }
    if (any)
        out << "The following items are available: " << list.str() << ".";
    else
        out << "No items are available.";
    return out.str();
}

std::string StateRenderer::render_with_question(const WorldState& world,
                                                const Question& question) const {
    std::ostringstream out;
    out << render(world) << " Someone asks: '" << question.text << "'";
    return out.str();
}

} // namespace pqa
