#include "pqa/variants.hpp"

#include <optional>
#include <thread>

#include "pqa/categorize.hpp"
#include "pqa/llm/modules.hpp"
#include "pqa/llm/parse.hpp"
#include "pqa/numeric.hpp"
#include "pqa/symbolic.hpp"
#include "pqa/text.hpp"

namespace pqa {

namespace {

const std::vector<std::pair<Variant, std::string>>& variant_table() {
    static const std::vector<std::pair<Variant, std::string>> table{
        {Variant::Pcm, "pcm"},
        {Variant::LlmUtilities, "llm-utilities"},
        {Variant::LlmSemantics, "llm-semantics"},
        {Variant::LlmSemanticsUtilities, "llm-semantics-utilities"},
        {Variant::LlmBaseSemanticsUtilities, "llm-base-semantics-utilities"},
        {Variant::LlmSemanticsUtilitiesDps, "llm-semantics-utilities-dps"},
        {Variant::FullNesy, "full-nesy"},
        {Variant::PromptedQuestionerGoals, "prompted-questioner-goals"},
        {Variant::PromptedQuestionerNoGoals, "prompted-questioner-nogoals"},
        {Variant::OneShotCot, "one-shot-cot"},
    };
    return table;
}

} // namespace

const std::string& variant_name(Variant v) {
    for (const auto& [variant, name] : variant_table())
        if (variant == v) return name;
    throw ConfigError("unknown variant");
}

Variant variant_from_name(const std::string& name) {
    for (const auto& [variant, label] : variant_table())
        if (label == name) return variant;
    throw ConfigError("unknown variant: " + name);
}

std::vector<Variant> all_variants() {
    std::vector<Variant> out;
    for (const auto& [variant, name] : variant_table()) out.push_back(variant);
    return out;
}

VariantBindings bindings_for(Variant v) {
    VariantBindings b;
    switch (v) {
    case Variant::Pcm:
        break;
    case Variant::LlmUtilities:
        b.utilities = Impl::Llm;
        break;
    case Variant::LlmSemantics:
        b.base_semantics = Impl::Llm;
        b.pragmatic_semantics = Impl::Llm;
        break;
    case Variant::LlmSemanticsUtilities:
        b.base_semantics = Impl::Llm;
        b.pragmatic_semantics = Impl::Llm;
        b.utilities = Impl::Llm;
        break;
    case Variant::LlmBaseSemanticsUtilities:
        b.base_semantics = Impl::Llm;
        b.utilities = Impl::Llm;
        break;
    case Variant::LlmSemanticsUtilitiesDps:
        b.base_semantics = Impl::Llm;
        b.pragmatic_semantics = Impl::Llm;
        b.utilities = Impl::Llm;
        b.goals = Impl::Llm;
        break;
    case Variant::FullNesy:
        b.base_semantics = Impl::Llm;
        b.pragmatic_semantics = Impl::Llm;
        b.utilities = Impl::Llm;
        b.goals = Impl::Llm;
        b.proposals = Impl::Llm;
        b.likelihood = LikelihoodRoute::SampleMatch;
        break;
    case Variant::PromptedQuestionerGoals:
        b = bindings_for(Variant::FullNesy);
        b.likelihood = LikelihoodRoute::PromptedWithGoals;
        break;
    case Variant::PromptedQuestionerNoGoals:
        b = bindings_for(Variant::FullNesy);
        b.likelihood = LikelihoodRoute::PromptedWithoutGoals;
        break;
    case Variant::OneShotCot:
        b.monolithic = true;
        break;
    }
    return b;
}

int VignetteRun::ok_count() const {
    int n = 0;
    for (const auto& it : iterations)
        if (it.ok) ++n;
    return n;
}

Eigen::VectorXd VignetteRun::mean_probs() const {
    Eigen::VectorXd total = Eigen::VectorXd::Zero(5);
    int n = 0;
    for (const auto& it : iterations) {
        if (!it.ok) continue;
        total += it.category_probs;
        ++n;
    }
    if (n == 0)
        throw ModelError("vignette " + vignette_id + " has no successful iteration");
    return total / static_cast<double>(n);
}

int RunResult::total_iterations() const {
    int n = 0;
    for (const auto& v : vignettes) n += static_cast<int>(v.iterations.size());
    return n;
}

int RunResult::failed_iterations() const {
    int n = 0;
    for (const auto& v : vignettes)
        n += static_cast<int>(v.iterations.size()) - v.ok_count();
    return n;
}

Eigen::VectorXd RunResult::aggregate() const {
    Eigen::VectorXd total = Eigen::VectorXd::Zero(5);
    int n = 0;
    for (const auto& v : vignettes) {
        if (v.ok_count() == 0) continue;
        total += v.mean_probs();
        ++n;
    }
    if (n == 0) throw ModelError("no vignette produced a result");
    return total / static_cast<double>(n);
}

double estimate_question_likelihood(const Goal& goal, const Vignette& vignette,
                                    const Question& question, const QuestionProposer& proposer,
                                    int n) {
    if (n < 1) throw ModelError("sample estimate needs n >= 1");
    const auto samples = proposer.sample(goal, vignette, n);
    int matches = 0;
    for (const auto& sample : samples)
        if (text::same_utterance(sample.text, question.text)) ++matches;
    return (static_cast<double>(matches) + 1.0) /
           (static_cast<double>(samples.size()) + 2.0);
}

namespace {

struct StageTracker {
    std::string current = "setup";
};

// Everything the pipeline owns for one (vignette, iteration) pass.
struct SlotSet {
    SymbolicSemantics symbolic_sem;
    std::optional<llm::LlmSemanticEvaluator> llm_sem;
    SplitSemantics sem;
    std::unique_ptr<UtilityEvaluator> utilities;
    std::unique_ptr<GoalProposer> goal_proposer;
    std::unique_ptr<ResponseProposer> response_proposer;
    std::unique_ptr<QuestionProposer> question_proposer;
    std::unique_ptr<QuestionLikelihoodScorer> scorer;

    SlotSet(const Vignette& vignette, const VariantBindings& bindings,
            const Services& services, int iteration)
        : symbolic_sem(make_vocabulary(vignette)),
          llm_sem(make_llm_sem(vignette, bindings, services, iteration)),
          sem(bindings.base_semantics == Impl::Llm ? static_cast<const SemanticEvaluator&>(*llm_sem)
                                                   : symbolic_sem,
              bindings.pragmatic_semantics == Impl::Llm
                  ? static_cast<const SemanticEvaluator&>(*llm_sem)
                  : symbolic_sem) {
        llm::ModuleContext ctx{services.client, services.prompts, iteration};
        if (bindings.utilities == Impl::Llm) {
            require_llm(services, "utility evaluator");
            utilities = std::make_unique<llm::LlmUtilityEvaluator>(ctx);
        } else {
            if (!services.utilities)
                throw ConfigError("symbolic utilities need a utility table");
            utilities = std::make_unique<SymbolicUtilityEvaluator>(*services.utilities);
        }
        if (bindings.goals == Impl::Llm) {
            require_llm(services, "goal proposer");
            goal_proposer = std::make_unique<llm::LlmGoalProposer>(ctx);
        } else {
            goal_proposer = std::make_unique<SymbolicGoalProposer>();
        }
        if (bindings.proposals == Impl::Llm) {
            require_llm(services, "proposers");
            response_proposer = std::make_unique<llm::LlmResponseProposer>(ctx);
            question_proposer = std::make_unique<llm::LlmQuestionProposer>(ctx);
        } else {
            response_proposer = std::make_unique<SymbolicResponseProposer>();
            question_proposer = std::make_unique<SymbolicQuestionProposer>();
        }
        if (bindings.likelihood == LikelihoodRoute::PromptedWithGoals ||
            bindings.likelihood == LikelihoodRoute::PromptedWithoutGoals) {
            require_llm(services, "prompted questioner");
            scorer = std::make_unique<llm::LlmQuestionLikelihood>(ctx);
        }
    }

private:
    static std::set<OptionId> make_vocabulary(const Vignette& vignette) {
        const auto items = vignette.all_items();
        return std::set<OptionId>(items.begin(), items.end());
    }

    static std::optional<llm::LlmSemanticEvaluator> make_llm_sem(const Vignette& vignette,
                                                                 const VariantBindings& bindings,
                                                                 const Services& services,
                                                                 int iteration) {
        if (bindings.base_semantics != Impl::Llm && bindings.pragmatic_semantics != Impl::Llm)
            return std::nullopt;
        require_llm(services, "semantic evaluator");
        StateRenderer renderer{vignette.setting, vignette.all_items()};
        return llm::LlmSemanticEvaluator(llm::ModuleContext{services.client, services.prompts,
                                                            iteration},
                                         std::move(renderer));
    }

    static void require_llm(const Services& services, const std::string& slot) {
        if (!services.client || !services.prompts)
            throw ConfigError("LLM-backed " + slot + " needs a chat client and prompts");
    }
};

Eigen::VectorXd fold_categories(const Distribution<Response>& responses,
                                const Vignette& vignette, IterationOutcome& outcome) {
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(5);
    double unclassified = 0.0;
    for (std::size_t i = 0; i < responses.size(); ++i) {
        const double p = responses.prob(i);
        const auto coded = categorize(responses.item(i).text, vignette);
        if (coded.category == ResponseCategory::Unclassified) {
            unclassified += p;
            continue;
        }
        probs(static_cast<Eigen::Index>(category_index(coded.category))) += p;
        if (coded.partial_mention && p > 0.0) ++outcome.partial_mention_responses;
    }
    outcome.unclassified_mass = unclassified;
    const double classified = probs.sum();
    if (!(classified > 0.0))
        throw ModelError("all response mass is unclassified");
    return probs / classified;
}

IterationOutcome run_iteration_inner(const Vignette& vignette, const VariantBindings& bindings,
                                     const ModelConfig& config, const Services& services,
                                     int iteration, StageTracker& stage) {
    IterationOutcome outcome;

    if (bindings.monolithic) {
        stage.current = "completion";
        if (!services.client || !services.prompts)
            throw ConfigError("the one-shot model needs a chat client and prompts");
        const std::string completion =
            services.client->chat(llm::one_shot_cot_prompt(*services.prompts, vignette),
                                  iteration);
        stage.current = "categorize";
        const std::string answer = llm::extract_cot_answer(completion);
        const auto coded = categorize(answer, vignette);
        if (coded.category == ResponseCategory::Unclassified)
            throw ModelError("unclassified completion");
        Eigen::VectorXd probs = Eigen::VectorXd::Zero(5);
        probs(static_cast<Eigen::Index>(category_index(coded.category))) = 1.0;
        outcome.category_probs = probs;
        outcome.ok = true;
        return outcome;
    }

    const SlotSet slots(vignette, bindings, services, iteration);
    const Question observed = vignette.observed_question();

    stage.current = "goals";
    const std::vector<Goal> goals = slots.goal_proposer->propose(vignette, config.n_goal_proposals);

    stage.current = "decision-problems";
    std::vector<DecisionProblem> dps;
    for (const auto& goal : goals) dps.push_back(goal_dp(goal, vignette, *slots.utilities));
    const Eigen::VectorXd dp_prior =
        Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dps.size()),
                                  1.0 / static_cast<double>(dps.size()));

    stage.current = "question-likelihood";
    const auto goal_of = [&](const DecisionProblem& dp) -> const Goal& {
        for (std::size_t i = 0; i < dps.size(); ++i)
            if (dps[i].goal_label == dp.goal_label) return goals[i];
        throw ModelError("decision problem without a goal: " + dp.goal_label);
    };

    DpLikelihoodFn likelihood;
    const R0Fn r0 = make_base_respondent(slots.sem);
    std::vector<Question> exact_questions;
    switch (bindings.likelihood) {
    case LikelihoodRoute::ExactQuestioner: {
        exact_questions = canonical_questions(vignette);
        likelihood = [&, questions = exact_questions](const DecisionProblem& dp) {
            return pragmatic_questioner(dp, questions, r0, slots.sem, config.agent_params)
                .prob_of(observed);
        };
        break;
    }
    case LikelihoodRoute::SampleMatch: {
        likelihood = [&](const DecisionProblem& dp) {
            return estimate_question_likelihood(goal_of(dp), vignette, observed,
                                                *slots.question_proposer,
                                                config.n_question_proposals);
        };
        break;
    }
    case LikelihoodRoute::PromptedWithGoals:
    case LikelihoodRoute::PromptedWithoutGoals: {
        const bool with_goals = bindings.likelihood == LikelihoodRoute::PromptedWithGoals;
        likelihood = [&, with_goals](const DecisionProblem& dp) {
            const Goal& goal = goal_of(dp);
            const std::optional<Goal> prompt_goal =
                with_goals ? std::optional<Goal>(goal) : std::nullopt;
            const double raw = slots.scorer->score(prompt_goal, vignette, observed);
            if (config.joint_renormalization) {
                // The grand total over the question-by-problem grid is the
                // same for every problem, so it cancels in the posterior.
                return raw;
            }
            const auto question_set = slots.question_proposer->propose(
                goal, vignette, observed, config.n_question_proposals);
            double total = 0.0;
            for (const auto& q : question_set)
                total += slots.scorer->score(prompt_goal, vignette, q);
            return total > 0.0 ? raw / total : 0.0;
        };
        break;
    }
    }

    stage.current = "responses";
    const std::vector<Response> responses =
        slots.response_proposer->propose(vignette, config.n_response_proposals);

    stage.current = "respondent";
    const Distribution<Response> answer_dist =
        pragmatic_respondent(observed, responses, dps, dp_prior, likelihood,
                             vignette.actual_world(), slots.sem, config.agent_params);

    stage.current = "categorize";
    outcome.category_probs = fold_categories(answer_dist, vignette, outcome);
    outcome.ok = true;
    return outcome;
}

} // namespace

IterationOutcome run_iteration(const Vignette& vignette, const VariantBindings& bindings,
                               const ModelConfig& config, const Services& services,
                               int iteration) {
    StageTracker stage;
    try {
        return run_iteration_inner(vignette, bindings, config, services, iteration, stage);
    } catch (const std::exception& e) {
        IterationOutcome outcome;
        outcome.ok = false;
        outcome.stage = stage.current;
        outcome.error = e.what();
        return outcome;
    }
}

RunResult run_with_bindings(const VariantBindings& bindings, const ModelConfig& config,
                            const std::vector<Vignette>& corpus, const Services& services,
                            const std::atomic<bool>* interrupt) {
    if (corpus.empty()) throw CorpusError("empty corpus");
    if (config.iterations < 1) throw ConfigError("iterations must be positive");
    config.agent_params.validate();

    RunResult result;
    result.vignettes.resize(corpus.size());
    for (std::size_t vi = 0; vi < corpus.size(); ++vi) {
        result.vignettes[vi].vignette_id = corpus[vi].id;
        result.vignettes[vi].iterations.resize(static_cast<std::size_t>(config.iterations));
    }

    const std::size_t total = corpus.size() * static_cast<std::size_t>(config.iterations);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stopped{false};

    const auto work = [&] {
        for (;;) {
            if (interrupt && interrupt->load()) {
                stopped = true;
                return;
            }
            const std::size_t slot = next.fetch_add(1);
            if (slot >= total) return;
            const std::size_t vi = slot / static_cast<std::size_t>(config.iterations);
            const int iteration = static_cast<int>(slot % static_cast<std::size_t>(config.iterations));
            result.vignettes[vi].iterations[static_cast<std::size_t>(iteration)] =
                run_iteration(corpus[vi], bindings, config, services, iteration);
        }
    };

    const int n_workers = std::max(1, config.workers);
    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    if (stopped) {
        result.interrupted = true;
        for (auto& v : result.vignettes)
            for (auto& it : v.iterations)
                if (!it.ok && it.error.empty()) {
                    it.stage = "scheduler";
                    it.error = "interrupted";
                }
    }
    return result;
}

RunResult run_variant(const ModelConfig& config, const std::vector<Vignette>& corpus,
                      const Services& services, const std::atomic<bool>* interrupt) {
    return run_with_bindings(bindings_for(config.variant), config, corpus, services, interrupt);
}

} // namespace pqa
