#pragma once

#include <set>
#include <string>
#include <vector>

#include "pqa/types.hpp"

namespace pqa {

// Base-level evaluation checks truth and safety of literal answers;
// pragmatic evaluation checks truth only.
enum class SemanticsMode { BaseLevel, Pragmatic };

class SemanticEvaluator {
public:
    virtual ~SemanticEvaluator() = default;
    virtual bool is_true_and_safe(const WorldState& world, const Question& question,
                                  const Response& response, SemanticsMode mode) const = 0;
};

// Rule-based semantics over structured responses. The polar part is true iff
// the queried option's availability matches the world; every mentioned option
// must be available; exhaustive answers must list exactly the available set.
class SymbolicSemantics final : public SemanticEvaluator {
public:
    explicit SymbolicSemantics(std::set<OptionId> vocabulary)
        : vocabulary_(std::move(vocabulary)) {}

    bool is_true_and_safe(const WorldState& world, const Question& question,
                          const Response& response, SemanticsMode mode) const override;

    bool is_true(const WorldState& world, const Question& question,
                 const Response& response) const;

private:
    std::set<OptionId> vocabulary_;
};

// Routes base-level and pragmatic evaluation to independently bound
// implementations, so the two can be swapped separately.
class SplitSemantics final : public SemanticEvaluator {
public:
    SplitSemantics(const SemanticEvaluator& base, const SemanticEvaluator& pragmatic)
        : base_(base), pragmatic_(pragmatic) {}

    bool is_true_and_safe(const WorldState& world, const Question& question,
                          const Response& response, SemanticsMode mode) const override {
        const SemanticEvaluator& impl =
            mode == SemanticsMode::BaseLevel ? base_ : pragmatic_;
        return impl.is_true_and_safe(world, question, response, mode);
    }

private:
    const SemanticEvaluator& base_;
    const SemanticEvaluator& pragmatic_;
};

// Renders a hypothetical world as the situation text given to text-based
// evaluators.
struct StateRenderer {
    std::string setting;                  // scene description without stock listing
    std::vector<OptionId> display_order;  // canonical option order

    std::string render(const WorldState& world) const;
    std::string render_with_question(const WorldState& world, const Question& question) const;
};

} // namespace pqa
