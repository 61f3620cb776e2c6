#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/numeric.hpp"

namespace pqa {

inline constexpr double kProbabilityTolerance = 1e-9;

// Finite distribution over typed support items. The universal return type of
// every agent in the model: probabilities live in an Eigen vector, support
// items keep their domain type. Support order is meaningful and preserved.
template <typename T>
class Distribution {
public:
    Distribution() = default;

    Distribution(std::vector<T> support, Eigen::VectorXd probs)
        : support_(std::move(support)), probs_(std::move(probs)) {
        validate();
    }

    static Distribution uniform(std::vector<T> support) {
        const auto n = static_cast<Eigen::Index>(support.size());
        if (n == 0) throw ModelError("empty choice set");
        return Distribution(std::move(support),
                            Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
    }

    static Distribution from_weights(std::vector<T> support, const Eigen::VectorXd& weights) {
        return Distribution(std::move(support), normalized(weights));
    }

    static Distribution delta(T item) {
        std::vector<T> support;
        support.push_back(std::move(item));
        return Distribution(std::move(support), Eigen::VectorXd::Ones(1));
    }

    std::size_t size() const { return support_.size(); }
    const std::vector<T>& support() const { return support_; }
    const Eigen::VectorXd& probs() const { return probs_; }
    const T& item(std::size_t i) const { return support_.at(i); }
    double prob(std::size_t i) const { return probs_(static_cast<Eigen::Index>(i)); }

    /// Probability of an item, 0 if absent from the support.
    double prob_of(const T& x) const {
        for (std::size_t i = 0; i < support_.size(); ++i)
            if (support_[i] == x) return prob(i);
        return 0.0;
    }

    /// Index of the most probable item; ties go to the earlier support entry.
    std::size_t argmax() const {
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < probs_.size(); ++i)
            if (probs_(i) > probs_(best)) best = i;
        return static_cast<std::size_t>(best);
    }

    const T& mode() const { return support_[argmax()]; }

private:
    void validate() const {
        if (support_.empty())
            throw ModelError("empty choice set");
        if (static_cast<Eigen::Index>(support_.size()) != probs_.size())
            throw ModelError("support/probability length mismatch");
        if ((probs_.array() < 0.0).any() || !probs_.allFinite())
            throw ModelError("invalid probability entry");
        if (std::abs(probs_.sum() - 1.0) > kProbabilityTolerance)
            throw ModelError("probabilities do not sum to 1");
        for (std::size_t i = 0; i < support_.size(); ++i)
            for (std::size_t j = i + 1; j < support_.size(); ++j)
                if (support_[i] == support_[j])
                    throw ModelError("duplicate support item");
    }

    std::vector<T> support_;
    Eigen::VectorXd probs_;
};

} // namespace pqa
