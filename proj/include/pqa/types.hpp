#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pqa/distribution.hpp"
#include "pqa/errors.hpp"
#include "pqa/text.hpp"

namespace pqa {

using OptionId = std::string;

// Which items exist in a hypothetical state of the context. The requested
// target is typically absent in the actual state.
struct WorldState {
    std::set<OptionId> available;

    bool has(const OptionId& option) const { return available.count(option) > 0; }
    bool operator==(const WorldState&) const = default;
};

enum class QuestionKind { Polar, WhAll, FreeText };

struct Question {
    std::string text;
    QuestionKind kind = QuestionKind::FreeText;
    std::optional<OptionId> queried_option; // set iff kind == Polar

    static Question polar(OptionId option, std::string text);
    static Question wh_all(std::string text);
    static Question free_text(std::string text);

    bool operator==(const Question& other) const {
        return text::same_utterance(text, other.text);
    }
};

enum class Polarity { Yes, No };

struct Response {
    std::string text;
    std::optional<Polarity> polar_part;
    std::set<OptionId> mentioned_options;
    // Exhaustive answers assert that the mentioned options are exactly the
    // available ones (the literal reading of a wh answer).
    bool exhaustive = false;

    static Response literal_yes();
    static Response literal_no();
    static Response exhaustive_for(const WorldState& world);

    bool operator==(const Response& other) const {
        return text::same_utterance(text, other.text);
    }
};

// A questioner objective. Symbolic goals name the option they favor;
// free-text goals from a proposer carry only the description.
struct Goal {
    std::string description;
    std::optional<OptionId> preferred_option;

    // Key used to look ratings up in a utility table.
    const std::string& table_key() const {
        return preferred_option ? *preferred_option : description;
    }
    bool operator==(const Goal&) const = default;
};

struct AgentParams {
    double alpha_questioner = 5.0;
    double alpha_respondent = 5.0;
    // Temperature of the option-choice policy inside the decision-problem
    // value. Utilities are on a 0-100 scale, so this stays small.
    double alpha_policy = 0.05;
    // Weight of belief change (KL) against decision value in the pragmatic
    // respondent's utility.
    double lambda_info = 0.3;
    std::function<double(const Response&)> cost_response; // null => zero cost
    std::function<double(const Question&)> cost_question; // null => zero cost

    double response_cost(const Response& r) const {
        return cost_response ? cost_response(r) : 0.0;
    }
    double question_cost(const Question& q) const {
        return cost_question ? cost_question(q) : 0.0;
    }
    void validate() const;
};

// The questioner's decision problem: world states, options, a utility for
// every (world, option) pair and prior beliefs over the worlds.
struct DecisionProblem {
    std::vector<WorldState> worlds;
    std::vector<OptionId> options;
    Eigen::MatrixXd utilities; // worlds x options
    Eigen::VectorXd world_prior;
    std::string goal_label;

    void validate() const;

    Eigen::VectorXd expected_utilities() const {
        return utilities.transpose() * world_prior;
    }

    // Distributions over decision problems identify entries by label;
    // labels must be unique within one inference.
    bool operator==(const DecisionProblem& other) const {
        return goal_label == other.goal_label;
    }
};

/// All 2^n availability combinations of the given options, in mask order
/// (bit i set means options[i] is available).
std::vector<WorldState> availability_worlds(const std::vector<OptionId>& options);

/// Decision problem whose worlds span every availability combination, with
/// a flat world prior. An unavailable option is worth nothing.
DecisionProblem availability_dp(std::string goal_label,
                                const std::vector<OptionId>& options,
                                const Eigen::VectorXd& option_ratings);

} // namespace pqa
