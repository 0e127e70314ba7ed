#include "turnpike/equivalence.hpp"

#include "turnpike/errors.hpp"
#include "turnpike/linalg.hpp"

#include <algorithm>

namespace turnpike {

GValue compute_G(const Mdp& mdp, const DecisionRule& rule, const RationalVector& v) {
    const std::size_t m = mdp.num_states();
    if (v.size() != m) throw InputError("vector length differs from the state count");
    GValue g;
    g.basis.push_back(RationalVector(m, Rational(1)));
    RationalVector next = v;
    while (g.value < m) {
        auto family = g.basis;
        family.push_back(next);
        if (rank(family) < family.size()) break;
        g.basis.push_back(next);
        ++g.value;
        next = push_forward(mdp, rule, next);
    }
    return g;
}

bool pushforwards_equal(const Mdp& mdp, const DecisionRule& rule1, const RationalVector& v1,
                        const DecisionRule& rule2, const RationalVector& v2) {
    std::size_t g = std::min(compute_G(mdp, rule1, v1).value, compute_G(mdp, rule2, v2).value);
    RationalVector a = v1, b = v2;
    for (std::size_t t = 0; t < g; ++t) {
        if (a != b) return false;
        a = push_forward(mdp, rule1, a);
        b = push_forward(mdp, rule2, b);
    }
    return true;
}

bool values_equal_all_discounts(const Mdp& mdp, const DecisionRule& rule1, const DecisionRule& rule2) {
    return pushforwards_equal(mdp, rule1, policy_reward(mdp, rule1), rule2, policy_reward(mdp, rule2));
}

}  // namespace turnpike
