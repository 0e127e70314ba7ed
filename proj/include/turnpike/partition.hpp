#pragma once

#include "turnpike/bellman.hpp"
#include "turnpike/limits.hpp"
#include "turnpike/mdp.hpp"
#include "turnpike/rational_function.hpp"
#include "turnpike/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace turnpike {

/// Every decision rule with its stationary value function. Rules with
/// identical value functions share a class.
struct RuleValues {
    std::vector<DecisionRule> rules;
    /// values[i][x] = v^{rules[i]}(x) as a function of the discount factor.
    std::vector<std::vector<RationalFunction>> values;
    /// classes[c] lists rule indices with identical value functions.
    std::vector<std::vector<std::size_t>> classes;
    /// class_of[i] is the class of rules[i].
    std::vector<std::size_t> class_of;

    const std::vector<RationalFunction>& class_value(std::size_t c) const {
        return values[classes[c].front()];
    }
    RuleSet class_rules(const std::vector<std::size_t>& class_ids) const;
};

RuleValues rule_values(const Mdp& mdp, const Caps& caps = Caps::from_env());

struct PartitionPoint {
    IsolatedRoot point;
    bool is_break = false;
    bool is_touching = false;
    RuleSet d_minus;
    RuleSet d_at;
    RuleSet d_plus;

    /// "break", "touching" or "break+touching".
    std::string kind() const;
};

/// An open interval (lo, hi) of constant optimal set. The first interval
/// also contains 0 when `closed_at_zero` is set.
struct PartitionInterval {
    IsolatedRoot lo;
    IsolatedRoot hi;
    bool closed_at_zero = false;
    /// A rational strictly inside the interval.
    Rational sample;
    RuleSet optimal;
};

struct PartitionReport {
    /// Ascending; 0 appears only when it is irregular.
    std::vector<PartitionPoint> irregular_points;
    std::vector<PartitionInterval> intervals;
    /// D(0).
    RuleSet d_zero;
    /// Largest irregular point, or 0 when there is none.
    IsolatedRoot blackwell_point = IsolatedRoot::exact(0);
};

PartitionReport canonical_partition(const Mdp& mdp, const Caps& caps = Caps::from_env());
PartitionReport canonical_partition(const RuleValues& table);

struct OneSidedSets {
    RuleSet minus;
    RuleSet at;
    RuleSet plus;
};

/// D(alpha-), D(alpha), D(alpha+); D(0-) is empty.
OneSidedSets one_sided_optimal_sets(const Mdp& mdp, const Rational& alpha,
                                    const Caps& caps = Caps::from_env());
OneSidedSets one_sided_optimal_sets(const PartitionReport& report, const Rational& alpha);

/// Position of alpha in a partition: the index of the interval containing it,
/// or of the irregular point equal to it.
struct Location {
    bool at_point = false;
    std::size_t index = 0;
};

Location locate(const PartitionReport& report, const Rational& alpha);

/// One piece of a piecewise polynomial value function: `value` is exact on
/// the closed interval [lo, hi].
struct Piece {
    IsolatedRoot lo;
    IsolatedRoot hi;
    std::vector<Polynomial> value;
};

/// A point where the first-step-optimal set D_n is irregular.
struct FirstStepPoint {
    IsolatedRoot point;
    bool is_break = false;
    bool is_touching = false;
    RuleProduct d_minus;
    RuleProduct d_at;
    RuleProduct d_plus;
};

struct FirstStepInterval {
    IsolatedRoot lo;
    IsolatedRoot hi;
    Rational sample;
    RuleProduct optimal;
};

/// V_{n, alpha} as a function of alpha on [0, 1), with the first-step
/// structure of D_n. Horizon 0 has no first-step data.
struct PiecewiseValue {
    std::size_t horizon = 0;
    std::vector<Piece> pieces;
    std::vector<FirstStepPoint> first_step_points;
    /// Maximal open intervals of constant D_n between irregular points.
    std::vector<FirstStepInterval> first_step_intervals;
    /// D_n(0).
    RuleProduct d_zero;

    /// Exact V_{n, alpha}; alpha must be rational in [0, 1).
    RationalVector operator()(const Rational& alpha) const;
};

/// Horizons 0..n_max. Throws CapExceeded past the symbolic-horizon or
/// piece caps.
std::vector<PiecewiseValue> symbolic_value_iteration(const Mdp& mdp, std::size_t n_max,
                                                     const Caps& caps = Caps::from_env());

/// Applies one Bellman step to a piecewise value function.
PiecewiseValue symbolic_bellman(const Mdp& mdp, const PiecewiseValue& previous,
                                const Caps& caps = Caps::from_env());

enum class FirstStepKind { Regular, Break, Touching, BreakTouching };

std::string to_string(FirstStepKind kind);

struct FirstStepClassification {
    FirstStepKind kind = FirstStepKind::Regular;
    RuleProduct d_minus;
    RuleProduct d_at;
    RuleProduct d_plus;
};

/// Classification of alpha for the n-horizon first-step sets, read off a
/// piecewise value of horizon n.
FirstStepClassification first_step_classify(const PiecewiseValue& value, const Rational& alpha);
FirstStepClassification first_step_classify(const Mdp& mdp, const Rational& alpha, std::size_t n,
                                            const Caps& caps = Caps::from_env());

}  // namespace turnpike
