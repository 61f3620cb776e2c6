#include "pqa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pqa/errors.hpp"
#include "pqa/numeric.hpp"

namespace pqa {

double uniform_baseline_jsd(const HumanReference& human) {
    const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(5, 0.2);
    return jsd(uniform, human.proportions);
}

double delta_score(const Eigen::VectorXd& model_props, const HumanReference& human) {
    return uniform_baseline_jsd(human) - jsd(model_props, human.proportions);
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

} // namespace

Interval bootstrap_ci(std::size_t n_items,
                      const std::function<double(const std::vector<std::size_t>&)>& statistic,
                      int reps, double level, unsigned seed) {
    if (n_items < 2) throw Error("bootstrap needs at least two items");
    if (reps < 2) throw Error("bootstrap needs at least two replicates");
    if (level <= 0.0 || level >= 1.0) throw Error("confidence level must lie in (0,1)");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n_items - 1);

    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(reps));
    std::vector<std::size_t> indices(n_items);
    for (int rep = 0; rep < reps; ++rep) {
        for (auto& ix : indices) ix = pick(rng);
        stats.push_back(statistic(indices));
    }
    std::sort(stats.begin(), stats.end());
    const double tail = (1.0 - level) / 2.0;
    return {quantile(stats, tail), quantile(stats, 1.0 - tail)};
}

double pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error("pearson needs two equally sized samples");
    const double mx = x.mean();
    const double my = y.mean();
    const Eigen::VectorXd dx = x.array() - mx;
    const Eigen::VectorXd dy = y.array() - my;
    const double denom = std::sqrt(dx.squaredNorm() * dy.squaredNorm());
    if (denom == 0.0) throw Error("pearson undefined for constant samples");
    return dx.dot(dy) / denom;
}

} // namespace pqa
