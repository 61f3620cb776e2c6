#include "pqa/llm/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "pqa/errors.hpp"
#include "pqa/text.hpp"

namespace pqa::llm {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct NumberScan {
    double value;
    std::size_t begin;
    std::size_t end; // one past the last consumed character
};

std::optional<NumberScan> first_number(const std::string& text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const bool digit = std::isdigit(static_cast<unsigned char>(c));
        const bool signed_digit = (c == '-' || c == '+') && i + 1 < text.size() &&
                                  std::isdigit(static_cast<unsigned char>(text[i + 1]));
        const bool dot_digit = c == '.' && i + 1 < text.size() &&
                               std::isdigit(static_cast<unsigned char>(text[i + 1]));
        if (!digit && !signed_digit && !dot_digit) continue;
        errno = 0;
        const char* start = text.c_str() + i;
        char* after = nullptr;
        const double v = std::strtod(start, &after);
        if (after == start || errno == ERANGE || !std::isfinite(v)) continue;
        return NumberScan{v, i, i + static_cast<std::size_t>(after - start)};
    }
    return std::nullopt;
}

bool is_exactly_number(const std::string& text, const NumberScan& scan) {
    for (std::size_t i = 0; i < scan.begin; ++i)
        if (!std::isspace(static_cast<unsigned char>(text[i]))) return false;
    for (std::size_t i = scan.end; i < text.size(); ++i)
        if (!std::isspace(static_cast<unsigned char>(text[i]))) return false;
    return true;
}

} // namespace

ParsedNumber parse_rating_0_100(const std::string& text) {
    const auto scan = first_number(text);
    if (!scan)
        throw ParseError("no number found in rating: '" + trimmed(text) + "'");
    if (scan->value < 0.0 || scan->value > 100.0)
        throw ParseError("rating outside [0,100]: " + std::to_string(scan->value));
    return {scan->value, is_exactly_number(text, *scan)};
}

ParsedBool parse_yes_no(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && !std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    std::string word;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i])))
        word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i++]))));

    if (word != "yes" && word != "no")
        throw ParseError("expected yes/no, got: '" + trimmed(text) + "'");

    bool strict = true;
    for (; i < text.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isalnum(c)) {
            strict = false;
            break;
        }
    }
    return {word == "yes", strict};
}

std::vector<std::string> parse_numbered_list(const std::string& text, int expected_n) {
    if (expected_n < 1) throw ParseError("expected_n must be at least 1");

    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    lines.push_back(cur);

    // Strict pass: "1." / "2)" prefixes.
    std::vector<std::string> numbered;
    for (const auto& line : lines) {
        const std::string t = trimmed(line);
        std::size_t i = 0;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
        if (i == 0 || i >= t.size()) continue;
        if (t[i] != '.' && t[i] != ')') continue;
        const std::string item = trimmed(t.substr(i + 1));
        if (!item.empty()) numbered.push_back(item);
    }
    std::vector<std::string> items = numbered;

    if (items.empty()) {
        // Tolerant pass: bullets or plain lines.
        for (const auto& line : lines) {
            std::string t = trimmed(line);
            if (t.empty()) continue;
            if (t[0] == '-' || t[0] == '*') t = trimmed(t.substr(1));
            if (!t.empty()) items.push_back(t);
        }
    }
    if (items.empty())
        throw ParseError("no list items found");
    if (items.size() > static_cast<std::size_t>(expected_n))
        items.resize(static_cast<std::size_t>(expected_n));
    return items;
}

ParsedNumber parse_likelihood(const std::string& text) {
    const auto scan = first_number(text);
    if (!scan)
        throw ParseError("no number found in likelihood: '" + trimmed(text) + "'");
    double v = scan->value;
    std::size_t i = scan->end;
    while (i < text.size() && text[i] == ' ') ++i;
    if (i < text.size() && text[i] == '%') v /= 100.0;
    if (v < 0.0 || v > 1.0)
        throw ParseError("likelihood outside [0,1]: " + std::to_string(v));
    return {v, is_exactly_number(text, *scan)};
}

std::vector<std::string> parse_comma_list(const std::string& text, int expected_n) {
    if (expected_n < 1) throw ParseError("expected_n must be at least 1");

    std::vector<std::string> items;
    if (text.find(',') != std::string::npos) {
        std::string cur;
        for (char c : text) {
            if (c == ',' || c == '\n') {
                const std::string t = trimmed(cur);
                if (!t.empty()) items.push_back(t);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        const std::string t = trimmed(cur);
        if (!t.empty()) items.push_back(t);
    } else {
        items = parse_numbered_list(text, expected_n);
    }

    std::vector<std::string> unique;
    for (auto& item : items) {
        bool seen = false;
        for (const auto& u : unique)
            if (text::same_utterance(u, item)) {
                seen = true;
                break;
            }
        if (!seen) unique.push_back(std::move(item));
    }
    if (unique.empty())
        throw ParseError("no list items found");
    if (unique.size() > static_cast<std::size_t>(expected_n))
        unique.resize(static_cast<std::size_t>(expected_n));
    return unique;
}

std::string extract_cot_answer(const std::string& completion) {
    // Case-insensitive search for the last "you reply:".
    const std::string marker = "you reply:";
    std::size_t found = std::string::npos;
    for (std::size_t i = 0; i + marker.size() <= completion.size(); ++i) {
        bool match = true;
        for (std::size_t k = 0; k < marker.size(); ++k) {
            if (std::tolower(static_cast<unsigned char>(completion[i + k])) != marker[k]) {
                match = false;
                break;
            }
        }
        if (match) found = i + marker.size();
    }
    if (found != std::string::npos) {
        const std::string tail = trimmed(completion.substr(found));
        if (!tail.empty()) return tail;
    }

    // Last non-empty paragraph.
    std::size_t end = completion.size();
    while (true) {
        const std::size_t sep = completion.rfind("\n\n", end == 0 ? 0 : end - 1);
        const std::size_t begin = sep == std::string::npos ? 0 : sep + 2;
        const std::string paragraph = trimmed(completion.substr(begin, end - begin));
        if (!paragraph.empty()) return paragraph;
        if (begin == 0) break;
        end = sep;
    }
    return trimmed(completion);
}

} // namespace pqa::llm
