#pragma once

#include "turnpike/limits.hpp"
#include "turnpike/mdp.hpp"
#include "turnpike/partition.hpp"
#include "turnpike/roots.hpp"

#include <optional>
#include <vector>

namespace turnpike {

/// Smallest positive optimality-equation defect V - T^phi V over rules
/// outside D(alpha), with a rule attaining it.
struct SuboptimalityGap {
    Rational gap;
    DecisionRule witness;
};

/// Throws AllRulesOptimal when D(alpha) is every rule.
SuboptimalityGap suboptimality_gap(const Mdp& mdp, const Rational& alpha);

struct TurnpikeResult {
    Rational alpha;
    unsigned n_value = 1;
    /// Every horizon past this one is proven to satisfy D_n ⊆ D.
    std::size_t certificate_horizon = 0;
    /// Absent when every rule is optimal or alpha = 0.
    std::optional<Rational> gap;
    /// ||V - s|| on balanced rewards; a rule in D_n has defect at most
    /// 2 alpha^n times this.
    Rational value_spread;
    /// For N >= 2, a rule in D_{N-1} \ D.
    std::optional<DecisionRule> witness;
};

TurnpikeResult turnpike_integer(const Mdp& mdp, const Rational& alpha, const Caps& caps = Caps::from_env());

/// Horizons n in [1, horizon] with D_n(alpha) not contained in D(alpha).
std::vector<std::size_t> inclusion_failures(const Mdp& mdp, const Rational& alpha, std::size_t horizon);

/// An interval of constant N inside the query interval. Irrational
/// candidate points get `n` unset.
struct TurnpikeInterval {
    IsolatedRoot lo;
    IsolatedRoot hi;
    bool lo_closed = false;
    bool hi_closed = false;
    std::optional<unsigned> n;
};

struct DiscontinuityPoint {
    IsolatedRoot point;
    std::optional<unsigned> n;
    bool left = false;
    bool right = false;
    /// True when N at the point is unknown and the sides cannot be told apart.
    bool indeterminate = false;
};

struct TurnpikeIntervalMap {
    Rational lo;
    Rational hi;
    std::vector<TurnpikeInterval> intervals;
    std::vector<DiscontinuityPoint> discontinuities;
    /// Largest first-step horizon whose irregular points were candidates.
    std::size_t horizon_used = 0;
    bool unbounded_suspect = false;

    /// Points where N is not left continuous, not right continuous, either, both.
    std::vector<IsolatedRoot> left_discontinuities() const;
    std::vector<IsolatedRoot> right_discontinuities() const;
    std::vector<IsolatedRoot> all_discontinuities() const;
    std::vector<IsolatedRoot> two_sided_discontinuities() const;
};

/// Turnpike intervals of the closed interval [lo, hi] ⊆ [0, 1). The
/// result is flagged unbounded_suspect when N exceeds n_cap + 1.
TurnpikeIntervalMap turnpike_intervals(const Mdp& mdp, const Rational& lo, const Rational& hi,
                                       std::size_t n_cap, const Caps& caps = Caps::from_env());

struct CoverInterval {
    Rational lo;
    Rational hi;
    unsigned n;
};

struct TurnpikeCover {
    std::vector<CoverInterval> intervals;
    /// Measure of [lo, hi] left out of the cover; always below epsilon.
    Rational excised;
};

/// Disjoint closed turnpike intervals covering [lo, hi] up to measure
/// epsilon. Throws CapExceeded when N is unbounded on a piece.
TurnpikeCover turnpike_cover(const Mdp& mdp, const Rational& lo, const Rational& hi, const Rational& epsilon,
                             std::size_t n_cap, const Caps& caps = Caps::from_env());

}  // namespace turnpike
