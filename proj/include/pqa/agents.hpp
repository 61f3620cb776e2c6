#pragma once

#include <functional>
#include <vector>

#include "pqa/distribution.hpp"
#include "pqa/semantics.hpp"
#include "pqa/types.hpp"

// The three recursive agents and exact enumeration inference.
//
// The questioner holds a private decision problem and picks questions by the
// value of the answers they are expected to provoke from a context-blind
// base-level respondent. The pragmatic respondent inverts that choice to
// infer the decision problem behind an observed question, then picks the
// reply that best trades off belief change against decision value.

namespace pqa {

/// Answer behavior of the base-level respondent, abstracted so that the
/// semantics behind it can be swapped.
using R0Fn = std::function<Distribution<Response>(const Question&, const WorldState&)>;

/// Question likelihood Q(q_obs | D) used for decision-problem inference;
/// exact, sample-estimated and prompt-elicited sources all fit this shape.
using DpLikelihoodFn = std::function<double(const DecisionProblem&)>;

/// Uniform distribution over the literal answers that are true in the world
/// and safe for the question.
Distribution<Response> base_respondent(const Question& question, const WorldState& world,
                                       const SemanticEvaluator& semantics);

R0Fn make_base_respondent(const SemanticEvaluator& semantics);

/// Expected utility of the soft-max option policy: the value a questioner
/// assigns to facing this decision problem with their current beliefs.
double dp_value(const DecisionProblem& dp, double alpha);

/// Bayes-conditions the world prior on the response being true given the
/// question. Options and utilities are unchanged.
DecisionProblem updated_dp(const DecisionProblem& dp, const Question& question,
                           const Response& response, const SemanticEvaluator& semantics);

/// Soft-max choice over questions by expected post-answer decision value,
/// enumerating worlds and base-level answers exactly.
Distribution<Question> pragmatic_questioner(const DecisionProblem& dp,
                                            const std::vector<Question>& questions,
                                            const R0Fn& r0,
                                            const SemanticEvaluator& semantics,
                                            const AgentParams& params);

/// Posterior over decision problems given the observed question:
/// likelihood times prior, renormalized.
Distribution<DecisionProblem> infer_dp(const Question& question,
                                       const std::vector<DecisionProblem>& dps,
                                       const Eigen::VectorXd& dp_prior,
                                       const DpLikelihoodFn& likelihood);

/// Soft-max choice over truthful responses. Utility mixes belief change
/// (KL of post- against pre-answer world beliefs) with the value of the
/// updated decision problem, in expectation over the inferred problems.
Distribution<Response> pragmatic_respondent(const Question& question,
                                            const std::vector<Response>& responses,
                                            const std::vector<DecisionProblem>& dps,
                                            const Eigen::VectorXd& dp_prior,
                                            const DpLikelihoodFn& likelihood,
                                            const WorldState& actual_world,
                                            const SemanticEvaluator& semantics,
                                            const AgentParams& params);

/// Response-side utility of one truthful response under an already-computed
/// decision-problem posterior. Exposed for the respondent and its tests.
double respondent_utility(const Question& question, const Response& response,
                          const Distribution<DecisionProblem>& dp_posterior,
                          const SemanticEvaluator& semantics, const AgentParams& params);

} // namespace pqa
