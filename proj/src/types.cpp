#include "pqa/types.hpp"

#include <sstream>

namespace pqa {

Question Question::polar(OptionId option, std::string text) {
    Question q;
    q.text = std::move(text);
    q.kind = QuestionKind::Polar;
    q.queried_option = std::move(option);
    return q;
}

Question Question::wh_all(std::string text) {
    Question q;
    q.text = std::move(text);
    q.kind = QuestionKind::WhAll;
    return q;
}

Question Question::free_text(std::string text) {
    Question q;
    q.text = std::move(text);
    q.kind = QuestionKind::FreeText;
    return q;
}

Response Response::literal_yes() {
    Response r;
    r.text = "yes";
    r.polar_part = Polarity::Yes;
    return r;
}

Response Response::literal_no() {
    Response r;
    r.text = "no";
    r.polar_part = Polarity::No;
    return r;
}

Response Response::exhaustive_for(const WorldState& world) {
    Response r;
    r.exhaustive = true;
    r.mentioned_options = world.available;
    if (world.available.empty()) {
        r.text = "We have nothing.";
        return r;
    }
    std::ostringstream out;
    out << "We have ";
    std::size_t i = 0;
    const std::size_t n = world.available.size();
    for (const auto& option : world.available) {
        if (i > 0) out << (i + 1 == n ? " and " : ", ");
        out << option;
        ++i;
    }
    out << ".";
    r.text = out.str();
    return r;
}

void AgentParams::validate() const {
    if (!(alpha_questioner > 0.0) || !(alpha_respondent > 0.0) || !(alpha_policy > 0.0))
        throw ModelError("soft-max rationality must be positive");
    if (lambda_info < 0.0 || lambda_info > 1.0)
        throw ModelError("lambda_info must lie in [0,1]");
}

void DecisionProblem::validate() const {
    const auto n_worlds = static_cast<Eigen::Index>(worlds.size());
    const auto n_options = static_cast<Eigen::Index>(options.size());
    if (n_worlds == 0 || n_options == 0)
        throw ModelError("decision problem needs worlds and options");
    if (utilities.rows() != n_worlds || utilities.cols() != n_options)
        throw ModelError("utility table shape mismatch");
    if (!utilities.allFinite())
        throw ModelError("non-finite utility");
    if (world_prior.size() != n_worlds)
        throw ModelError("world prior length mismatch");
    if ((world_prior.array() < 0.0).any())
        throw ModelError("negative world prior");
    if (std::abs(world_prior.sum() - 1.0) > kProbabilityTolerance)
        throw ModelError("world prior does not sum to 1");
}

std::vector<WorldState> availability_worlds(const std::vector<OptionId>& options) {
    if (options.size() > 16)
        throw ModelError("availability lattice too large to enumerate");
    const std::size_t n = options.size();
    std::vector<WorldState> worlds;
    worlds.reserve(std::size_t(1) << n);
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        WorldState w;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) w.available.insert(options[i]);
        worlds.push_back(std::move(w));
    }
    return worlds;
}

DecisionProblem availability_dp(std::string goal_label,
                                const std::vector<OptionId>& options,
                                const Eigen::VectorXd& option_ratings) {
    if (option_ratings.size() != static_cast<Eigen::Index>(options.size()))
        throw ModelError("one rating per option required");
    DecisionProblem dp;
    dp.goal_label = std::move(goal_label);
    dp.options = options;
    dp.worlds = availability_worlds(options);
    const auto n_worlds = static_cast<Eigen::Index>(dp.worlds.size());
    const auto n_options = static_cast<Eigen::Index>(options.size());
    dp.utilities.resize(n_worlds, n_options);
    for (Eigen::Index w = 0; w < n_worlds; ++w)
        for (Eigen::Index a = 0; a < n_options; ++a)
            dp.utilities(w, a) = dp.worlds[static_cast<std::size_t>(w)].has(options[static_cast<std::size_t>(a)])
                                     ? option_ratings(a)
                                     : 0.0;
    dp.world_prior = Eigen::VectorXd::Constant(n_worlds, 1.0 / static_cast<double>(n_worlds));
    dp.validate();
    return dp;
}

} // namespace pqa
