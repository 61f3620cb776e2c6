#pragma once

#include <Eigen/Core>
#include <cmath>

#include "pqa/errors.hpp"

// Scalar kernels shared by every agent: soft-max choice rules and
// information measures over dense probability vectors. All divergences are
// in bits (log base 2).

namespace pqa {

/// Soft-max choice rule: p_i ∝ exp(alpha * s_i), computed with
/// max-subtraction. Preserves the order of the input.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic>
softmax(const Eigen::MatrixBase<Derived>& scores, typename Derived::Scalar alpha) {
    using Scalar = typename Derived::Scalar;
    using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
    if (scores.size() == 0)
        throw ModelError("empty choice set");
    if (!scores.allFinite())
        throw ModelError("non-finite score in soft-max");
    if (!(alpha > Scalar(0)))
        throw ModelError("soft-max rationality must be positive");
    Vec shifted = alpha * (scores.array() - scores.maxCoeff()).matrix();
    Vec w = shifted.array().exp();
    return w / w.sum();
}

/// KL divergence in bits. Requires q_i > 0 wherever p_i > 0; terms with
/// p_i == 0 contribute nothing.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar kl_divergence(const Eigen::MatrixBase<DerivedP>& p,
                                        const Eigen::MatrixBase<DerivedQ>& q) {
    using Scalar = typename DerivedP::Scalar;
    if (p.size() != q.size())
        throw ModelError("support mismatch");
    Scalar acc = 0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const Scalar pi = p(i);
        if (pi <= Scalar(0)) continue;
        const Scalar qi = q(i);
        if (qi <= Scalar(0))
            throw ModelError("infinite divergence");
        acc += pi * std::log2(pi / qi);
    }
    return acc;
}

/// Jensen-Shannon divergence in bits: symmetric, bounded by 1 for
/// two-component mixtures.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar jsd(const Eigen::MatrixBase<DerivedP>& p,
                              const Eigen::MatrixBase<DerivedQ>& q) {
    using Scalar = typename DerivedP::Scalar;
    using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
    if (p.size() != q.size())
        throw ModelError("support mismatch");
    Vec m = (p + q) / Scalar(2);
    return (kl_divergence(p, m) + kl_divergence(q, m)) / Scalar(2);
}

/// Normalizes a non-negative weight vector to sum 1.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic>
normalized(const Eigen::MatrixBase<Derived>& weights) {
    using Scalar = typename Derived::Scalar;
    if (weights.size() == 0)
        throw ModelError("empty choice set");
    if ((weights.array() < Scalar(0)).any())
        throw ModelError("negative weight");
    const Scalar total = weights.sum();
    if (!(total > Scalar(0)))
        throw ModelError("zero total mass");
    return weights / total;
}

} // namespace pqa
