#pragma once

#include "turnpike/mdp.hpp"
#include "turnpike/rational_function.hpp"

#include <vector>

namespace turnpike {

/// Stationary value of `rule` as exact rational functions of the discount
/// factor, one per state, via Cramer's rule on I - aP.
std::vector<RationalFunction> value_rational_function(const Mdp& mdp, const DecisionRule& rule);

/// Evaluates every component at `alpha`.
RationalVector evaluate(const std::vector<RationalFunction>& f, const Rational& alpha);

}  // namespace turnpike
