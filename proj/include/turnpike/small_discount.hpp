#pragma once

#include "turnpike/limits.hpp"
#include "turnpike/mdp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace turnpike {

/// The nested rule sets F_n of rules whose n-step pushed-forward reward
/// P^n r dominates the rest of F_{n-1}, computed on balanced rewards.
struct FiltrationReport {
    /// F_{-1} = F, F_0, ..., F_L.
    std::vector<RuleSet> f_chain;
    /// X_0, ..., X_L: states where F_{n-1} members disagree at step n.
    std::vector<std::vector<std::size_t>> x_chain;
    std::size_t l_value = 0;
    std::size_t h_value = 0;
    /// L_0 = 0 < L_1 < ... < L_H = L.
    std::vector<std::size_t> jump_indices;
    /// C_0, ..., C_L; unset while still infinite.
    std::vector<std::optional<Rational>> c_chain;
    /// Delta_0..Delta_L and the R_1* variant.
    std::vector<Rational> delta_chain;
    std::vector<Rational> delta_tilde_chain;

    const RuleSet& f(std::size_t n) const { return f_chain[n + 1]; }
    const Rational& delta() const { return delta_chain.back(); }
    const Rational& delta_tilde() const { return delta_tilde_chain.back(); }
};

FiltrationReport policy_filtration(const Mdp& mdp, const Caps& caps = Caps::from_env());

struct SmallDiscountConstants {
    std::optional<Rational> c_l;
    Rational delta;
    Rational delta_tilde;
};

SmallDiscountConstants small_discount_constants(const FiltrationReport& filtration);
SmallDiscountConstants small_discount_constants(const Mdp& mdp, const Caps& caps = Caps::from_env());

struct CheckResult {
    std::string name;
    bool passed = true;
    bool applicable = true;
    std::string detail;
};

/// Spot checks of the small-discount results on `grid` rationals per
/// sampled interval.
std::vector<CheckResult> small_discount_checks(const Mdp& mdp, std::size_t grid = 20,
                                               const Caps& caps = Caps::from_env());

/// `count` evenly spaced rationals strictly inside (lo, hi).
std::vector<Rational> interior_grid(const Rational& lo, const Rational& hi, std::size_t count);

}  // namespace turnpike
