#include "pqa/text.hpp"

#include <cctype>

namespace pqa::text {

std::string normalize_key(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (unsigned char c : s) {
        if (std::isalnum(c)) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(std::tolower(c)));
        } else {
            pending_space = true;
        }
    }
    return out;
}

std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : s) {
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

namespace {

bool plural_of(const std::string& longer, const std::string& shorter) {
    if (shorter.size() < 3) return false;
    return longer == shorter + "s" || longer == shorter + "es";
}

} // namespace

bool tokens_match(const std::string& a, const std::string& b) {
    return a == b || plural_of(a, b) || plural_of(b, a);
}

bool mentions_phrase(const std::string& haystack, const std::string& phrase) {
    const auto hay = tokenize(haystack);
    const auto needle = tokenize(phrase);
    if (needle.empty() || hay.size() < needle.size()) return false;
    for (std::size_t start = 0; start + needle.size() <= hay.size(); ++start) {
        bool all = true;
        for (std::size_t k = 0; k < needle.size(); ++k) {
            if (!tokens_match(hay[start + k], needle[k])) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

bool same_utterance(const std::string& a, const std::string& b) {
    return normalize_key(a) == normalize_key(b);
}

} // namespace pqa::text
