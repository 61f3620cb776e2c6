#pragma once

#include <string>

#include "pqa/category.hpp"
#include "pqa/corpus.hpp"
#include "pqa/types.hpp"

namespace pqa {

struct Categorization {
    ResponseCategory category = ResponseCategory::Unclassified;
    // Exactly two options mentioned: the category follows the precedence
    // competitor > similar > unrelated and is flagged here.
    bool partial_mention = false;
};

/// Codes a free-text answer by which of the vignette's options it mentions
/// (case-insensitive whole-phrase matching with light inflection handling).
/// Deterministic and total; blank text is unclassified, and mentioning only
/// the target counts as no-options.
Categorization categorize(const std::string& response_text, const Vignette& vignette);

/// Builds a structured response from proposer text: derives the polar part
/// and the mentioned alternatives relative to the vignette.
Response derive_response(const std::string& response_text, const Vignette& vignette);

/// Maps proposed question text onto the vignette's item vocabulary: a polar
/// question when exactly one item is mentioned, a wh question when none is,
/// free text otherwise.
Question derive_question(const std::string& question_text, const Vignette& vignette);

} // namespace pqa
