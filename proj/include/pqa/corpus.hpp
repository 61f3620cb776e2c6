#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pqa/category.hpp"
#include "pqa/types.hpp"

namespace pqa {

enum class OptionRole { Competitor, Similar, Unrelated };

const std::string& role_label(OptionRole role);
OptionRole role_from_label(const std::string& label);

struct VignetteOption {
    OptionRole role;
    std::string name;
};

// One question-answering scenario: a context, a polar question about an
// absent target, and three labeled alternatives.
struct Vignette {
    std::string id;
    std::string context;  // full scenario text, stock included
    std::string setting;  // scene without the stock listing
    std::string question_text;
    OptionId target;
    std::vector<VignetteOption> options; // exactly one per role
    std::string source = "bundled";

    const OptionId& option_named(OptionRole role) const;
    std::vector<OptionId> alternative_names() const;
    // Target first, then competitor, similar, unrelated.
    std::vector<OptionId> all_items() const;
    WorldState actual_world() const;
    Question observed_question() const;

    void validate() const;
};

std::vector<Vignette> load_vignettes(const std::filesystem::path& path);
std::string serialize_vignettes(const std::vector<Vignette>& vignettes);

// Published human answer proportions for this task, in canonical category
// order (no-options, competitor, similar, unrelated, all-options).
struct HumanReference {
    Eigen::VectorXd proportions;
    double of(ResponseCategory c) const {
        return proportions(static_cast<Eigen::Index>(category_index(c)));
    }
};

HumanReference human_reference();

// Conditional preference ratings on a 0-100 scale, keyed by (goal, option).
// Multiple rows per pair are averaged; the raw samples stay available.
class UtilityTable {
public:
    static UtilityTable load_csv(const std::filesystem::path& path);

    void add(const std::string& goal_key, const OptionId& option, double rating);
    bool has(const std::string& goal_key, const OptionId& option) const;
    double rate(const std::string& goal_key, const OptionId& option) const;
    const std::vector<double>& samples(const std::string& goal_key, const OptionId& option) const;
    std::size_t size() const { return samples_.size(); }

private:
    std::map<std::pair<std::string, std::string>, std::vector<double>> samples_;
};

} // namespace pqa
