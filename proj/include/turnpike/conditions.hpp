#pragma once

#include "turnpike/limits.hpp"
#include "turnpike/mdp.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace turnpike {

enum class Side { Minus, Plus };
enum class Truth { True, False, Inconclusive };
enum class ConditionMethod { PropoACertificate, DefinitionWindow, DerivativeShortcut, ProposiBBThreshold };

std::string to_string(Side side);
std::string to_string(Truth truth);
std::string to_string(ConditionMethod method);

/// For one (phi, psi) pair of a Condition B check: the state whose
/// extremum over enumerated prefixes is the most decisive.
struct PairWitness {
    DecisionRule phi;
    DecisionRule psi;
    std::size_t state = 0;
    /// sup (minus side) or inf (plus side) over prefixes of length K of the
    /// (K+1)-horizon derivative difference at `state`.
    Rational extremum;
    /// The same extremum over the infinite-horizon policies made of a
    /// length-K prefix followed by a stationary rule of D(alpha*).
    Rational tail_extremum;
    /// Whether `extremum` beats the threshold.
    bool decisive = false;
};

struct ConditionVerdict {
    /// "A-", "A+", "B-" or "B+".
    std::string condition;
    Rational point;
    Truth holds = Truth::Inconclusive;
    ConditionMethod method = ConditionMethod::DefinitionWindow;
    std::size_t horizon_used = 0;
    /// Human-readable facts backing the verdict.
    std::vector<std::string> witnesses;
    /// Condition B pairs; for the derivative shortcut, the pairs with equal
    /// derivatives.
    std::vector<PairWitness> pairs;
    /// Exact threshold 2a^K[a/(1-a)^2 + (K+1)/(1-a)]R1* at horizon_used.
    std::optional<Rational> threshold;
};

/// Per-state derivative in the discount factor, at alpha, of
/// v_n(phi, prefix...) - v_n(psi, prefix...): the n-horizon values of the
/// Markov policies that start with phi or psi and then follow `prefix`.
RationalVector derivative_difference(const Mdp& mdp, const DecisionRule& phi, const DecisionRule& psi,
                                     const MarkovPrefix& prefix, const Rational& alpha, std::size_t n);

/// Derivative of the stationary value of `rule` at alpha.
RationalVector value_derivative(const Mdp& mdp, const DecisionRule& rule, const Rational& alpha);

struct HorizonWindow {
    std::size_t first = 1;
    std::size_t last = 64;
};

/// Condition A on one side of an irregular point alpha* in (0, 1). Throws
/// NotIrregularPoint when alpha* is regular.
ConditionVerdict check_condition_A(const Mdp& mdp, const Rational& point, Side side,
                                   HorizonWindow window = {}, const Caps& caps = Caps::from_env());

/// Condition B on one side of an irregular point, decided on zero terminal
/// rewards with prefix lengths K in `k_range`. Throws NotIrregularPoint and
/// CapExceeded when a prefix level outgrows caps.prefixes.
ConditionVerdict check_condition_B(const Mdp& mdp, const Rational& point, Side side,
                                   std::pair<std::size_t, std::size_t> k_range = {0, 12},
                                   const Caps& caps = Caps::from_env());

enum class SideBound { Bounded, Unbounded, UnboundedEvidence, Unknown };
std::string to_string(SideBound bound);

struct SideReport {
    SideBound bound = SideBound::Unknown;
    ConditionVerdict condition_a;
    ConditionVerdict condition_b;
    /// (alpha* -/+ 2^-k, N) for k = 3..8.
    std::vector<std::pair<Rational, unsigned>> samples;
    std::string reason;
};

struct BoundednessReport {
    Rational point;
    SideReport left;
    SideReport right;
};

/// Boundedness of N on each side of an irregular point from Conditions A
/// and B and the small-discount bound, with empirical samples. Empirical
/// growth is reported as evidence only.
BoundednessReport boundedness_verdict(const Mdp& mdp, const Rational& point, const Caps& caps = Caps::from_env());

}  // namespace turnpike
