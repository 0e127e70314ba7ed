#pragma once

#include "turnpike/mdp.hpp"

#include <vector>

namespace turnpike {

/// Length of the independent family {1, v, Pv, ..., P^{G-2}v}.
struct GValue {
    std::size_t value = 1;
    /// The family itself, starting with the all-ones vector.
    std::vector<RationalVector> basis;
};

GValue compute_G(const Mdp& mdp, const DecisionRule& rule, const RationalVector& v);

/// True iff P^t(rule1) v1 = P^t(rule2) v2 for every t >= 0, decided by
/// checking t < min(G(rule1, v1), G(rule2, v2)).
bool pushforwards_equal(const Mdp& mdp, const DecisionRule& rule1, const RationalVector& v1,
                        const DecisionRule& rule2, const RationalVector& v2);

/// True iff both rules have the same stationary value for every discount.
bool values_equal_all_discounts(const Mdp& mdp, const DecisionRule& rule1, const DecisionRule& rule2);

}  // namespace turnpike
