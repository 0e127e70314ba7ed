#pragma once

#include "turnpike/linalg.hpp"
#include "turnpike/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace turnpike {

/// Finite MDP with exact data. Actions are addressed by (state index,
/// action index); identifiers are kept for reporting only.
struct Mdp {
    std::vector<std::string> states;
    /// actions[x] lists the action identifiers available in state x.
    std::vector<std::vector<std::string>> actions;
    /// transition[x][a][y] = p(y | x, a).
    std::vector<std::vector<RationalVector>> transition;
    /// reward[x][a] = r(x, a).
    std::vector<RationalVector> reward;
    /// Terminal reward per state.
    RationalVector terminal;

    std::size_t num_states() const { return states.size(); }
    std::size_t num_actions(std::size_t x) const { return actions[x].size(); }
    /// Product of action counts, saturating at UINT64_MAX.
    std::uint64_t num_rules() const;

    friend bool operator==(const Mdp&, const Mdp&) = default;
};

/// Stationary deterministic decision: choice[x] is an action index of state x.
/// Ordering is lexicographic with the first state most significant, which
/// is also the enumeration order.
struct DecisionRule {
    std::vector<std::size_t> choice;

    friend auto operator<=>(const DecisionRule&, const DecisionRule&) = default;
    friend bool operator==(const DecisionRule&, const DecisionRule&) = default;
};

using RuleSet = std::set<DecisionRule>;

/// A Markov policy: rules[t] is used at step t; past the prefix the
/// optional stationary tail takes over.
struct MarkovPrefix {
    std::vector<DecisionRule> rules;
    std::optional<DecisionRule> tail;

    /// Rule used at step t. Throws InsufficientRules past the end without a tail.
    const DecisionRule& at(std::size_t t) const;
};

struct Violation {
    std::string where;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

struct Spreads {
    Rational r1, r2, r;
    Rational r1_star, r2_star, r_star;
    Rational f1, f2;
};

ValidationReport validate(const Mdp& mdp);
/// Throws InputError listing the violations when the MDP is invalid.
void require_valid(const Mdp& mdp);

/// All rules in lexicographic order. Throws CapExceeded past `cap` rules.
std::vector<DecisionRule> enumerate_decision_rules(const Mdp& mdp, std::uint64_t cap);
std::vector<DecisionRule> enumerate_decision_rules(const Mdp& mdp);

/// 0-based position of the rule in enumeration order.
std::uint64_t rule_index(const Mdp& mdp, const DecisionRule& rule);
/// "phi<k>" with k the 1-based enumeration position.
std::string rule_label(const Mdp& mdp, const DecisionRule& rule);
/// Looks an action up by identifier; throws InputError.
std::size_t action_index(const Mdp& mdp, std::size_t state, const std::string& action);
std::size_t state_index(const Mdp& mdp, const std::string& state);

RationalMatrix policy_matrix(const Mdp& mdp, const DecisionRule& rule);
RationalVector policy_reward(const Mdp& mdp, const DecisionRule& rule);
/// P(rule) v
RationalVector push_forward(const Mdp& mdp, const DecisionRule& rule, const RationalVector& v);

Spreads spreads(const Mdp& mdp);

struct Balanced {
    Mdp mdp;
    Spreads spreads;
};

/// Shifts rewards by F1 and terminal rewards by F2 so that R = R*.
Balanced balance(const Mdp& mdp);

/// Copy with every terminal reward replaced by zero.
Mdp with_zero_terminal(const Mdp& mdp);

}  // namespace turnpike
