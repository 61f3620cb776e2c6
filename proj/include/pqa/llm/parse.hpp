#pragma once

#include <string>
#include <vector>

#include "pqa/errors.hpp"

// Turning completions into values. Every parser is total over arbitrary
// byte strings: it returns a value or throws ParseError, never crashes.
// Parsing is two-phase: a strict pass for format-following output, then a
// documented tolerant fallback; the result records which phase succeeded.

namespace pqa::llm {

struct ParsedNumber {
    double value = 0.0;
    bool strict = false;
};

struct ParsedBool {
    bool value = false;
    bool strict = false;
};

/// First number in the text, required to lie in [0,100]. Nothing is
/// clamped; out-of-range is an error.
ParsedNumber parse_rating_0_100(const std::string& text);

/// Leading yes/no after whitespace and punctuation stripping,
/// case-insensitive.
ParsedBool parse_yes_no(const std::string& text);

/// Items of a numbered list ("1.", "2)" ...); falls back to bullets or
/// plain lines. Returns at most expected_n trimmed items.
std::vector<std::string> parse_numbered_list(const std::string& text, int expected_n);

/// First number in [0,1]; a trailing percent sign divides by 100.
ParsedNumber parse_likelihood(const std::string& text);

/// Comma-separated items; falls back to the numbered-list reading when the
/// text has no commas. Items are de-duplicated case-insensitively.
std::vector<std::string> parse_comma_list(const std::string& text, int expected_n);

/// Final answer of a chain-of-thought completion: the text after the last
/// "You reply:" marker, else the last paragraph.
std::string extract_cot_answer(const std::string& completion);

} // namespace pqa::llm
