#pragma once

#include <array>
#include <string>

#include "pqa/errors.hpp"

namespace pqa {

// Five-way coding of an answer by which in-context options it mentions.
// Unclassified is reported separately and never enters the five-way
// distribution.
enum class ResponseCategory {
    NoOptions,
    Competitor,
    Similar,
    Unrelated,
    AllOptions,
    Unclassified,
};

// Canonical support order of every category distribution; also the
// tie-break order when reporting a modal category.
inline constexpr std::array<ResponseCategory, 5> kCategoryOrder{
    ResponseCategory::NoOptions, ResponseCategory::Competitor, ResponseCategory::Similar,
    ResponseCategory::Unrelated, ResponseCategory::AllOptions};

inline const std::string& category_label(ResponseCategory c) {
    static const std::string labels[] = {"no-options", "competitor", "similar",
                                         "unrelated",  "all-options", "unclassified"};
    return labels[static_cast<int>(c)];
}

inline ResponseCategory category_from_label(const std::string& label) {
    for (int i = 0; i <= static_cast<int>(ResponseCategory::Unclassified); ++i)
        if (category_label(static_cast<ResponseCategory>(i)) == label)
            return static_cast<ResponseCategory>(i);
    throw Error("unknown response category: " + label);
}

inline std::size_t category_index(ResponseCategory c) {
    for (std::size_t i = 0; i < kCategoryOrder.size(); ++i)
        if (kCategoryOrder[i] == c) return i;
    throw Error("unclassified has no index in the five-way distribution");
}

} // namespace pqa
