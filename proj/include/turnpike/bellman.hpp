#pragma once

#include "turnpike/mdp.hpp"

#include <cstdint>
#include <vector>

namespace turnpike {

/// A product set of decision rules: every combination of the per-state
/// allowed actions. Argmax sets of Bellman operators always have this shape.
struct RuleProduct {
    /// allowed[x] is sorted ascending.
    std::vector<std::vector<std::size_t>> allowed;

    bool contains(const DecisionRule& rule) const;
    std::uint64_t size() const;
    /// Lexicographically smallest member.
    DecisionRule smallest() const;
    /// Throws CapExceeded when the set has more than `cap` members.
    RuleSet expand(std::uint64_t cap = 4096) const;

    friend bool operator==(const RuleProduct&, const RuleProduct&) = default;
};

/// r(x,a) + alpha * sum_y p(y|x,a) v(y) for every state and action.
std::vector<RationalVector> action_values(const Mdp& mdp, const Rational& alpha,
                                          const RationalVector& v);

/// Per-state maximum of action values and the actions attaining it.
struct BellmanStep {
    RationalVector value;
    RuleProduct argmax;
};

RationalVector apply_policy_operator(const Mdp& mdp, const DecisionRule& rule, const Rational& alpha,
                                     const RationalVector& v);
BellmanStep apply_bellman(const Mdp& mdp, const Rational& alpha, const RationalVector& v);

struct ValueIterationStep {
    std::size_t horizon;
    RationalVector value;
    /// First-step optimal rules at this horizon; empty product at horizon 0.
    RuleProduct first_step_optimal;
};

/// Trace from the terminal vector (horizon 0) to horizon n_max.
std::vector<ValueIterationStep> value_iteration(const Mdp& mdp, const Rational& alpha,
                                                std::size_t n_max);

/// Stationary value of a rule, the exact fixed point of its policy operator.
RationalVector evaluate_deterministic(const Mdp& mdp, const DecisionRule& rule, const Rational& alpha);

/// n-horizon value of a Markov policy, terminal reward included.
RationalVector evaluate_markov(const Mdp& mdp, const MarkovPrefix& prefix, const Rational& alpha,
                               std::size_t n);

struct OptimalSets {
    Rational alpha;
    RationalVector value;
    /// Rules whose stationary value is optimal.
    RuleProduct optimal;
    /// The rule policy iteration stopped at.
    DecisionRule policy;
    std::size_t iterations = 0;
};

/// Infinite-horizon optimum by exact policy iteration from the smallest rule.
OptimalSets optimal_set(const Mdp& mdp, const Rational& alpha);

/// (phi_0, ..., phi_{n-1}) with phi_i the smallest member of D_{n-i}(alpha).
MarkovPrefix rolling_horizon_policy(const Mdp& mdp, const Rational& alpha, std::size_t n);

/// Throws InputError unless 0 <= alpha < 1.
void require_discount(const Rational& alpha);

}  // namespace turnpike
