#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "pqa/corpus.hpp"

namespace pqa {

/// JSD between the flat five-category baseline and the human proportions.
double uniform_baseline_jsd(const HumanReference& human);

/// Improvement over the flat baseline: jsd(uniform, human) - jsd(model,
/// human). Positive means closer to the human data than the baseline.
double delta_score(const Eigen::VectorXd& model_props, const HumanReference& human);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Seeded percentile bootstrap: resamples item indices with replacement and
/// reports the [(1-level)/2, (1+level)/2] quantiles of the statistic.
Interval bootstrap_ci(std::size_t n_items,
                      const std::function<double(const std::vector<std::size_t>&)>& statistic,
                      int reps, double level, unsigned seed);

double pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

} // namespace pqa
