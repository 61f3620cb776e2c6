#pragma once

#include <string>
#include <vector>

namespace pqa::text {

/// Lowercases and strips punctuation; collapses whitespace runs to single
/// spaces. The de-duplication key for proposed utterances.
std::string normalize_key(const std::string& s);

/// Splits a normalized string into tokens.
std::vector<std::string> tokenize(const std::string& s);

/// Token equality up to a plural suffix: "coffees" matches "coffee",
/// "potatoes" matches "potato".
bool tokens_match(const std::string& a, const std::string& b);

/// Whole-phrase, case-insensitive containment with per-token stemming:
/// does `phrase` occur as a contiguous token run in `haystack`?
bool mentions_phrase(const std::string& haystack, const std::string& phrase);

/// True when the two strings normalize to the same key.
bool same_utterance(const std::string& a, const std::string& b);

} // namespace pqa::text
