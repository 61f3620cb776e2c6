#include "pqa/agents.hpp"

#include "pqa/numeric.hpp"

namespace pqa {

Distribution<Response> base_respondent(const Question& question, const WorldState& world,
                                       const SemanticEvaluator& semantics) {
    std::vector<Response> candidates;
    if (question.kind == QuestionKind::WhAll) {
        candidates.push_back(Response::exhaustive_for(world));
    } else {
        candidates.push_back(Response::literal_yes());
        candidates.push_back(Response::literal_no());
    }

    std::vector<Response> survivors;
    for (auto& r : candidates)
        if (semantics.is_true_and_safe(world, question, r, SemanticsMode::BaseLevel))
            survivors.push_back(std::move(r));
    if (survivors.empty())
        throw ModelError("no true safe response");
    return Distribution<Response>::uniform(std::move(survivors));
}

R0Fn make_base_respondent(const SemanticEvaluator& semantics) {
    return [&semantics](const Question& q, const WorldState& w) {
        return base_respondent(q, w, semantics);
    };
}

double dp_value(const DecisionProblem& dp, double alpha) {
    dp.validate();
    const Eigen::VectorXd eu = dp.expected_utilities();
    return softmax(eu, alpha).dot(eu);
}

DecisionProblem updated_dp(const DecisionProblem& dp, const Question& question,
                           const Response& response, const SemanticEvaluator& semantics) {
    Eigen::VectorXd posterior = dp.world_prior;
    for (Eigen::Index w = 0; w < posterior.size(); ++w) {
        if (posterior(w) == 0.0) continue;
        if (!semantics.is_true_and_safe(dp.worlds[static_cast<std::size_t>(w)], question,
                                        response, SemanticsMode::Pragmatic))
            posterior(w) = 0.0;
    }
    const double total = posterior.sum();
    if (!(total > 0.0))
        throw ModelError("response inconsistent with all worlds");
    DecisionProblem out = dp;
    out.world_prior = posterior / total;
    return out;
}

Distribution<Question> pragmatic_questioner(const DecisionProblem& dp,
                                            const std::vector<Question>& questions,
                                            const R0Fn& r0,
                                            const SemanticEvaluator& semantics,
                                            const AgentParams& params) {
    if (questions.empty())
        throw ModelError("empty choice set");
    params.validate();
    dp.validate();

    Eigen::VectorXd scores(static_cast<Eigen::Index>(questions.size()));
    for (std::size_t qi = 0; qi < questions.size(); ++qi) {
        const Question& q = questions[qi];
        double score = 0.0;
        for (Eigen::Index w = 0; w < dp.world_prior.size(); ++w) {
            const double pw = dp.world_prior(w);
            if (pw == 0.0) continue;
            const Distribution<Response> answers = r0(q, dp.worlds[static_cast<std::size_t>(w)]);
            for (std::size_t ri = 0; ri < answers.size(); ++ri) {
                const double pr = answers.prob(ri);
                if (pr == 0.0) continue;
                const Response& r = answers.item(ri);
                const DecisionProblem conditioned = updated_dp(dp, q, r, semantics);
                score += pw * pr * (dp_value(conditioned, params.alpha_policy) -
                                    params.response_cost(r));
            }
        }
        scores(static_cast<Eigen::Index>(qi)) = score - params.question_cost(q);
    }
    return Distribution<Question>(questions, softmax(scores, params.alpha_questioner));
}

Distribution<DecisionProblem> infer_dp(const Question& /*question*/,
                                       const std::vector<DecisionProblem>& dps,
                                       const Eigen::VectorXd& dp_prior,
                                       const DpLikelihoodFn& likelihood) {
    if (dps.empty())
        throw ModelError("empty choice set");
    if (dp_prior.size() != static_cast<Eigen::Index>(dps.size()))
        throw ModelError("decision-problem prior length mismatch");
    Eigen::VectorXd weights(dp_prior.size());
    for (std::size_t i = 0; i < dps.size(); ++i) {
        const double l = likelihood(dps[i]);
        if (l < 0.0)
            throw ModelError("negative question likelihood");
        weights(static_cast<Eigen::Index>(i)) = l * dp_prior(static_cast<Eigen::Index>(i));
    }
    if (!(weights.sum() > 0.0))
        throw ModelError("question unexplainable under all goals");
    return Distribution<DecisionProblem>::from_weights(dps, weights);
}

double respondent_utility(const Question& question, const Response& response,
                          const Distribution<DecisionProblem>& dp_posterior,
                          const SemanticEvaluator& semantics, const AgentParams& params) {
    double utility = -params.response_cost(response);
    for (std::size_t di = 0; di < dp_posterior.size(); ++di) {
        const double pd = dp_posterior.prob(di);
        if (pd == 0.0) continue;
        const DecisionProblem& dp = dp_posterior.item(di);
        const DecisionProblem conditioned = updated_dp(dp, question, response, semantics);
        const double belief_change = kl_divergence(conditioned.world_prior, dp.world_prior);
        utility += pd * (params.lambda_info * belief_change +
                         (1.0 - params.lambda_info) * dp_value(conditioned, params.alpha_policy));
    }
    return utility;
}

Distribution<Response> pragmatic_respondent(const Question& question,
                                            const std::vector<Response>& responses,
                                            const std::vector<DecisionProblem>& dps,
                                            const Eigen::VectorXd& dp_prior,
                                            const DpLikelihoodFn& likelihood,
                                            const WorldState& actual_world,
                                            const SemanticEvaluator& semantics,
                                            const AgentParams& params) {
    if (responses.empty())
        throw ModelError("empty choice set");
    params.validate();

    const Distribution<DecisionProblem> dp_posterior =
        infer_dp(question, dps, dp_prior, likelihood);

    std::vector<Response> survivors;
    std::vector<double> utilities;
    for (const Response& r : responses) {
        // False responses are dropped from the support rather than carried
        // with -inf scores.
        if (!semantics.is_true_and_safe(actual_world, question, r, SemanticsMode::Pragmatic))
            continue;
        survivors.push_back(r);
        utilities.push_back(respondent_utility(question, r, dp_posterior, semantics, params));
    }
    if (survivors.empty())
        throw ModelError("no admissible response");
    const Eigen::Map<const Eigen::VectorXd> scores(utilities.data(),
                                                   static_cast<Eigen::Index>(utilities.size()));
    return Distribution<Response>(std::move(survivors),
                                  softmax(scores, params.alpha_respondent));
}

} // namespace pqa
