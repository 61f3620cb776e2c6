#include "pqa/categorize.hpp"

#include "pqa/text.hpp"

namespace pqa {

Categorization categorize(const std::string& response_text, const Vignette& vignette) {
    Categorization out;
    if (text::tokenize(response_text).empty()) {
        out.category = ResponseCategory::Unclassified;
        return out;
    }

    bool mentioned[3] = {false, false, false};
    int count = 0;
    for (int role = 0; role < 3; ++role) {
        const auto& name = vignette.option_named(static_cast<OptionRole>(role));
        if (text::mentions_phrase(response_text, name)) {
            mentioned[role] = true;
            ++count;
        }
    }

    if (count == 0) {
        // A bare denial, even one naming the target, adds no option
        // information.
        out.category = ResponseCategory::NoOptions;
    } else if (count == 3) {
        out.category = ResponseCategory::AllOptions;
    } else {
        for (int role = 0; role < 3; ++role) {
            if (mentioned[role]) {
                out.category = role == 0   ? ResponseCategory::Competitor
                               : role == 1 ? ResponseCategory::Similar
                                           : ResponseCategory::Unrelated;
                break;
            }
        }
        out.partial_mention = count == 2;
    }
    return out;
}

namespace {

bool contains_tokens(const std::string& normalized, const std::string& phrase) {
    return normalized.find(text::normalize_key(phrase)) != std::string::npos;
}

} // namespace

Response derive_response(const std::string& response_text, const Vignette& vignette) {
    Response r;
    r.text = response_text;

    for (const auto& option : vignette.options)
        if (text::mentions_phrase(response_text, option.name))
            r.mentioned_options.insert(option.name);

    const std::string normalized = text::normalize_key(response_text);
    const auto tokens = text::tokenize(response_text);
    const std::string first = tokens.empty() ? std::string() : tokens.front();

    if (first == "yes") {
        r.polar_part = Polarity::Yes;
    } else if (first == "no" || contains_tokens(normalized, "don't have " + vignette.target) ||
               contains_tokens(normalized, "do not have " + vignette.target) ||
               contains_tokens(normalized, "no " + vignette.target) ||
               normalized.find("sorry") != std::string::npos) {
        r.polar_part = Polarity::No;
    } else if (contains_tokens(normalized, "have " + vignette.target) ||
               contains_tokens(normalized, "we have some " + vignette.target)) {
        r.polar_part = Polarity::Yes;
    }
    return r;
}

Question derive_question(const std::string& question_text, const Vignette& vignette) {
    std::vector<OptionId> mentioned;
    for (const auto& item : vignette.all_items())
        if (text::mentions_phrase(question_text, item))
            mentioned.push_back(item);

    if (mentioned.size() == 1)
        return Question::polar(mentioned.front(), question_text);
    if (mentioned.empty()) {
        const auto tokens = text::tokenize(question_text);
        if (!tokens.empty() && tokens.front() == "what")
            return Question::wh_all(question_text);
    }
    return Question::free_text(question_text);
}

} // namespace pqa
