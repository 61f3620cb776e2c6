#pragma once

// Brute-force reference implementations of the recursive agents: direct
// nested-loop transcriptions kept deliberately independent of the library's
// agent code. Shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pqa/types.hpp"

namespace pqa::oracle {

inline bool truth(const WorldState& w, const Question& q, const Response& r) {
    if (r.exhaustive) return r.mentioned_options == w.available;
    if (r.polar_part && q.kind == QuestionKind::Polar) {
        const bool available = w.has(*q.queried_option);
        if ((*r.polar_part == Polarity::Yes) != available) return false;
    }
    for (const auto& m : r.mentioned_options)
        if (!w.has(m)) return false;
    return true;
}

inline std::vector<double> softmax_direct(const std::vector<double>& scores, double alpha) {
    double mx = scores[0];
    for (double s : scores) mx = std::max(mx, s);
    std::vector<double> w(scores.size());
    long double total = 0.0L;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        w[i] = std::exp(alpha * (scores[i] - mx));
        total += w[i];
    }
    for (double& x : w) x = static_cast<double>(x / total);
    return w;
}

inline double value_direct(const std::vector<WorldState>& worlds,
                           const std::vector<OptionId>& options,
                           const Eigen::MatrixXd& utilities,
                           const std::vector<double>& prior, double alpha_policy) {
    std::vector<double> eu(options.size(), 0.0);
    for (std::size_t a = 0; a < options.size(); ++a)
        for (std::size_t w = 0; w < worlds.size(); ++w)
            eu[a] += prior[w] * utilities(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(a));
    const std::vector<double> policy = softmax_direct(eu, alpha_policy);
    double v = 0.0;
    for (std::size_t a = 0; a < options.size(); ++a) v += policy[a] * eu[a];
    return v;
}

inline std::vector<double> condition_prior(const DecisionProblem& dp,
                                           const std::vector<double>& prior,
                                           const Question& q, const Response& r) {
    std::vector<double> post(prior.size(), 0.0);
    double total = 0.0;
    for (std::size_t w = 0; w < dp.worlds.size(); ++w) {
        if (truth(dp.worlds[w], q, r)) {
            post[w] = prior[w];
            total += prior[w];
        }
    }
    for (double& x : post) x /= total;
    return post;
}

inline double kl_direct(const std::vector<double>& p, const std::vector<double>& q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0.0) acc += p[i] * std::log2(p[i] / q[i]);
    return acc;
}

// Base-level answer set: the true polar literal, or the exhaustive listing
// for a wh question. Symbolic semantics makes this deterministic.
inline std::vector<Response> r0_support(const WorldState& w, const Question& q) {
    if (q.kind == QuestionKind::WhAll)
        return {Response::exhaustive_for(w)};
    const Response yes = Response::literal_yes();
    const Response no = Response::literal_no();
    return {truth(w, q, yes) ? yes : no};
}

inline std::vector<double> prior_vec(const DecisionProblem& dp) {
    std::vector<double> p(dp.worlds.size());
    for (std::size_t w = 0; w < p.size(); ++w)
        p[w] = dp.world_prior(static_cast<Eigen::Index>(w));
    return p;
}

inline std::vector<double> questioner_direct(const DecisionProblem& dp,
                                             const std::vector<Question>& questions,
                                             const AgentParams& params) {
    std::vector<double> scores;
    const std::vector<double> prior = prior_vec(dp);
    for (const Question& q : questions) {
        double score = -params.question_cost(q);
        for (std::size_t w = 0; w < dp.worlds.size(); ++w) {
            if (prior[w] == 0.0) continue;
            const std::vector<Response> answers = r0_support(dp.worlds[w], q);
            const double pr = 1.0 / static_cast<double>(answers.size());
            for (const Response& r : answers) {
                const std::vector<double> post = condition_prior(dp, prior, q, r);
                score += prior[w] * pr *
                         (value_direct(dp.worlds, dp.options, dp.utilities, post,
                                       params.alpha_policy) -
                          params.response_cost(r));
            }
        }
        scores.push_back(score);
    }
    return softmax_direct(scores, params.alpha_questioner);
}

inline std::vector<double> dp_posterior_direct(const Question& q_obs,
                                               const std::vector<DecisionProblem>& dps,
                                               const std::vector<double>& dp_prior,
                                               const std::vector<Question>& questions,
                                               const AgentParams& params) {
    std::vector<double> post(dps.size());
    double total = 0.0;
    for (std::size_t d = 0; d < dps.size(); ++d) {
        const std::vector<double> qdist = questioner_direct(dps[d], questions, params);
        double like = 0.0;
        for (std::size_t qi = 0; qi < questions.size(); ++qi)
            if (questions[qi] == q_obs) like = qdist[qi];
        post[d] = like * dp_prior[d];
        total += post[d];
    }
    for (double& x : post) x /= total;
    return post;
}

struct RespondentResult {
    std::vector<std::size_t> surviving_indices;
    std::vector<double> probs;
};

inline RespondentResult respondent_direct(const Question& q_obs,
                                          const std::vector<Response>& responses,
                                          const std::vector<DecisionProblem>& dps,
                                          const std::vector<double>& dp_post,
                                          const WorldState& actual_world,
                                          const AgentParams& params) {
    RespondentResult out;
    std::vector<double> utilities;
    for (std::size_t ri = 0; ri < responses.size(); ++ri) {
        const Response& r = responses[ri];
        if (!truth(actual_world, q_obs, r)) continue;
        double u = -params.response_cost(r);
        for (std::size_t d = 0; d < dps.size(); ++d) {
            if (dp_post[d] == 0.0) continue;
            const std::vector<double> prior = prior_vec(dps[d]);
            const std::vector<double> post = condition_prior(dps[d], prior, q_obs, r);
            u += dp_post[d] * (params.lambda_info * kl_direct(post, prior) +
                               (1.0 - params.lambda_info) *
                                   value_direct(dps[d].worlds, dps[d].options,
                                                dps[d].utilities, post, params.alpha_policy));
        }
        out.surviving_indices.push_back(ri);
        utilities.push_back(u);
    }
    out.probs = softmax_direct(utilities, params.alpha_respondent);
    return out;
}

// --- Randomized toy instances -------------------------------------------

struct ToyInstance {
    std::vector<OptionId> options;
    std::vector<DecisionProblem> dps;
    std::vector<double> dp_prior;
    std::vector<Question> questions;
    std::vector<Response> responses;
    Question observed;
    WorldState actual_world;
    AgentParams params;
};

inline ToyInstance random_instance(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> util(0.0, 10.0);

    ToyInstance inst;
    const std::size_t n_options = 2 + rng() % 3; // 2..4
    for (std::size_t i = 0; i < n_options; ++i)
        inst.options.push_back("opt" + std::to_string(i));

    const std::size_t n_worlds = 2 + rng() % 2; // 2..3
    std::vector<WorldState> worlds;
    for (std::size_t w = 0; w < n_worlds; ++w) {
        WorldState ws;
        for (const auto& o : inst.options)
            if (unit(rng) < 0.6) ws.available.insert(o);
        worlds.push_back(std::move(ws));
    }

    const std::size_t n_dps = 1 + rng() % 4; // 1..4
    for (std::size_t d = 0; d < n_dps; ++d) {
        DecisionProblem dp;
        dp.goal_label = "dp" + std::to_string(d);
        dp.options = inst.options;
        dp.worlds = worlds;
        dp.utilities.resize(static_cast<Eigen::Index>(n_worlds),
                            static_cast<Eigen::Index>(n_options));
        for (Eigen::Index w = 0; w < dp.utilities.rows(); ++w)
            for (Eigen::Index a = 0; a < dp.utilities.cols(); ++a)
                dp.utilities(w, a) = util(rng);
        Eigen::VectorXd prior(static_cast<Eigen::Index>(n_worlds));
        for (Eigen::Index w = 0; w < prior.size(); ++w) prior(w) = 0.1 + unit(rng);
        dp.world_prior = prior / prior.sum();
        inst.dps.push_back(std::move(dp));
    }
    double prior_total = 0.0;
    for (std::size_t d = 0; d < n_dps; ++d) {
        inst.dp_prior.push_back(0.1 + unit(rng));
        prior_total += inst.dp_prior.back();
    }
    for (double& x : inst.dp_prior) x /= prior_total;

    std::vector<Question> pool;
    for (const auto& o : inst.options)
        pool.push_back(Question::polar(o, "Do you have " + o + "?"));
    pool.push_back(Question::wh_all("What do you have?"));
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t n_questions = std::min(pool.size(), std::size_t(2 + rng() % 3)); // 2..4
    inst.questions.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_questions));
    inst.observed = inst.questions[rng() % n_questions];
    inst.actual_world = worlds[rng() % n_worlds];

    const std::size_t n_responses = 2 + rng() % 5; // 2..6
    bool any_true = false;
    for (std::size_t ri = 0; ri < n_responses; ++ri) {
        Response r;
        r.text = "response " + std::to_string(ri);
        const double shape = unit(rng);
        if (shape < 0.15) {
            r = Response::exhaustive_for(worlds[rng() % n_worlds]);
            r.text += " (r" + std::to_string(ri) + ")";
        } else {
            if (unit(rng) < 0.7)
                r.polar_part = unit(rng) < 0.5 ? Polarity::Yes : Polarity::No;
            for (const auto& o : inst.options)
                if (unit(rng) < 0.3) r.mentioned_options.insert(o);
        }
        any_true = any_true || truth(inst.actual_world, inst.observed, r);
        inst.responses.push_back(std::move(r));
    }
    if (!any_true) {
        Response tautology;
        tautology.text = "hold on a moment";
        inst.responses.push_back(std::move(tautology));
    }

    inst.params.alpha_questioner = 0.5 + 3.0 * unit(rng);
    inst.params.alpha_respondent = 0.5 + 3.0 * unit(rng);
    inst.params.alpha_policy = 0.1 + 1.5 * unit(rng);
    inst.params.lambda_info = unit(rng);
    if (unit(rng) < 0.3) {
        const double response_fee = 0.5 * unit(rng);
        const double question_fee = 0.5 * unit(rng);
        inst.params.cost_response = [response_fee](const Response& r) {
            return response_fee * static_cast<double>(r.mentioned_options.size());
        };
        inst.params.cost_question = [question_fee](const Question& q) {
            return q.kind == QuestionKind::WhAll ? question_fee : 0.0;
        };
    }
    return inst;
}

} // namespace pqa::oracle
