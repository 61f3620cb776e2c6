#pragma once

#include <atomic>
#include <string>
#include <vector>

#include "pqa/agents.hpp"
#include "pqa/corpus.hpp"
#include "pqa/llm/client.hpp"
#include "pqa/llm/prompts.hpp"
#include "pqa/slots.hpp"

// Composition of the named model variants from slot bindings, and the
// simulation runner that produces per-vignette category distributions.

namespace pqa {

enum class Variant {
    Pcm,
    LlmUtilities,
    LlmSemantics,
    LlmSemanticsUtilities,
    LlmBaseSemanticsUtilities,
    LlmSemanticsUtilitiesDps,
    FullNesy,
    PromptedQuestionerGoals,
    PromptedQuestionerNoGoals,
    OneShotCot,
};

const std::string& variant_name(Variant v);
Variant variant_from_name(const std::string& name);
std::vector<Variant> all_variants();

enum class Impl { Symbolic, Llm };

enum class LikelihoodRoute {
    ExactQuestioner,      // enumerate the soft-max questioner
    SampleMatch,          // smoothed match fraction of proposed questions
    PromptedWithGoals,    // elicited likelihood conditioned on the goal
    PromptedWithoutGoals, // elicited likelihood from the context alone
};

// Which implementation fills each slot of the architecture. The monolithic
// variant bypasses the slots entirely with a single call.
struct VariantBindings {
    bool monolithic = false;
    Impl base_semantics = Impl::Symbolic;
    Impl pragmatic_semantics = Impl::Symbolic;
    Impl utilities = Impl::Symbolic;
    Impl goals = Impl::Symbolic;
    Impl proposals = Impl::Symbolic; // responses and questions together
    LikelihoodRoute likelihood = LikelihoodRoute::ExactQuestioner;

    bool uses_llm() const {
        return monolithic || base_semantics == Impl::Llm || pragmatic_semantics == Impl::Llm ||
               utilities == Impl::Llm || goals == Impl::Llm || proposals == Impl::Llm ||
               likelihood == LikelihoodRoute::PromptedWithGoals ||
               likelihood == LikelihoodRoute::PromptedWithoutGoals;
    }
    /// Every LLM-facing slot replaced by its rule-based counterpart; the
    /// prompted and sample likelihood routes fall back to the exact
    /// questioner.
    VariantBindings all_symbolic() const {
        VariantBindings b;
        return b;
    }
};

VariantBindings bindings_for(Variant v);

struct ModelConfig {
    Variant variant = Variant::Pcm;
    AgentParams agent_params;
    int n_response_proposals = 10;
    int n_question_proposals = 3;
    int n_goal_proposals = 4;
    int iterations = 5;
    unsigned seed = 0;
    int workers = 2;
    // Scope of the prompted-questioner renormalization: per decision
    // problem (default) or over the whole question-by-problem grid.
    bool joint_renormalization = false;
    double max_failure_rate = 0.5;
    llm::LLMConfig llm;
};

struct Services {
    const UtilityTable* utilities = nullptr;
    const llm::PromptLibrary* prompts = nullptr;
    llm::ChatClient* client = nullptr;
};

struct IterationOutcome {
    bool ok = false;
    Eigen::VectorXd category_probs; // canonical order, sums to 1
    double unclassified_mass = 0.0;
    int partial_mention_responses = 0;
    std::string stage;
    std::string error;
};

struct VignetteRun {
    std::string vignette_id;
    std::vector<IterationOutcome> iterations;

    int ok_count() const;
    /// Mean category distribution over successful iterations.
    Eigen::VectorXd mean_probs() const;
};

struct RunResult {
    std::vector<VignetteRun> vignettes;
    bool interrupted = false;

    int total_iterations() const;
    int failed_iterations() const;
    /// Mean over vignettes (those with at least one successful iteration).
    Eigen::VectorXd aggregate() const;
};

/// Smoothed fraction of proposer samples that reproduce the question:
/// (matches + 1) / (n + 2).
double estimate_question_likelihood(const Goal& goal, const Vignette& vignette,
                                    const Question& question, const QuestionProposer& proposer,
                                    int n);

/// One simulation of one vignette under the given bindings. Errors are
/// captured in the outcome together with the pipeline stage.
IterationOutcome run_iteration(const Vignette& vignette, const VariantBindings& bindings,
                               const ModelConfig& config, const Services& services,
                               int iteration);

RunResult run_variant(const ModelConfig& config, const std::vector<Vignette>& corpus,
                      const Services& services, const std::atomic<bool>* interrupt = nullptr);

RunResult run_with_bindings(const VariantBindings& bindings, const ModelConfig& config,
                            const std::vector<Vignette>& corpus, const Services& services,
                            const std::atomic<bool>* interrupt = nullptr);

} // namespace pqa
