#pragma once

// Brute-force reference computations used to cross-check the library. They
// share only the Mdp data type and Rational with the code under test.

#include "turnpike/mdp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using turnpike::DecisionRule;
using turnpike::Mdp;
using turnpike::Rational;
using turnpike::RationalVector;

inline std::vector<DecisionRule> all_rules(const Mdp& mdp) {
    std::vector<DecisionRule> out{DecisionRule{std::vector<std::size_t>(mdp.num_states(), 0)}};
    for (std::size_t x = mdp.num_states(); x-- > 0;) {
        std::vector<DecisionRule> next;
        for (const auto& r : out)
            for (std::size_t a = 0; a < mdp.num_actions(x); ++a) {
                DecisionRule c = r;
                c.choice[x] = a;
                next.push_back(c);
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// r(x, rule(x)) + alpha * sum_y p(y | x, rule(x)) v(y)
inline RationalVector step(const Mdp& mdp, const DecisionRule& rule, const Rational& alpha, const RationalVector& v) {
    RationalVector out(mdp.num_states());
    for (std::size_t x = 0; x < out.size(); ++x) {
        Rational acc = 0;
        const auto& p = mdp.transition[x][rule.choice[x]];
        for (std::size_t y = 0; y < out.size(); ++y) acc += p[y] * v[y];
        out[x] = mdp.reward[x][rule.choice[x]] + alpha * acc;
    }
    return out;
}

/// V_{n, alpha} by maximizing over every rule at every step.
inline std::vector<RationalVector> value_iteration(const Mdp& mdp, const Rational& alpha, std::size_t n) {
    auto rules = all_rules(mdp);
    std::vector<RationalVector> trace{mdp.terminal};
    for (std::size_t k = 1; k <= n; ++k) {
        RationalVector best = step(mdp, rules.front(), alpha, trace.back());
        for (const auto& r : rules) {
            RationalVector v = step(mdp, r, alpha, trace.back());
            for (std::size_t x = 0; x < v.size(); ++x) best[x] = std::max(best[x], v[x]);
        }
        trace.push_back(best);
    }
    return trace;
}

/// Rules attaining `target` when applied to `v`.
inline std::set<DecisionRule> attaining(const Mdp& mdp, const Rational& alpha, const RationalVector& v,
                                        const RationalVector& target) {
    std::set<DecisionRule> out;
    for (const auto& r : all_rules(mdp))
        if (step(mdp, r, alpha, v) == target) out.insert(r);
    return out;
}

/// Gauss-Jordan solve of (I - alpha P) v = r.
inline RationalVector stationary_value(const Mdp& mdp, const DecisionRule& rule, const Rational& alpha) {
    const std::size_t m = mdp.num_states();
    std::vector<RationalVector> a(m, RationalVector(m + 1));
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = 0; y < m; ++y) a[x][y] = (x == y ? 1 : 0) - alpha * mdp.transition[x][rule.choice[x]][y];
        a[x][m] = mdp.reward[x][rule.choice[x]];
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        while (piv < m && a[piv][c] == 0) ++piv;
        if (piv == m) throw std::runtime_error("singular policy system");
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
        }
    }
    RationalVector v(m);
    for (std::size_t x = 0; x < m; ++x) v[x] = a[x][m] / a[x][x];
    return v;
}

/// D(alpha): rules whose stationary value is the componentwise maximum.
inline std::set<DecisionRule> optimal_rules(const Mdp& mdp, const Rational& alpha, RationalVector* value = nullptr) {
    auto rules = all_rules(mdp);
    std::vector<RationalVector> values;
    for (const auto& r : rules) values.push_back(stationary_value(mdp, r, alpha));
    RationalVector best = values.front();
    for (const auto& v : values)
        for (std::size_t x = 0; x < v.size(); ++x) best[x] = std::max(best[x], v[x]);
    std::set<DecisionRule> out;
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (values[i] == best) out.insert(rules[i]);
    if (value) *value = best;
    return out;
}

/// 1 + the last n <= horizon with D_n not contained in D, or 1.
inline unsigned turnpike_n(const Mdp& mdp, const Rational& alpha, std::size_t horizon) {
    auto d = optimal_rules(mdp, alpha);
    auto trace = value_iteration(mdp, alpha, horizon);
    unsigned n = 1;
    for (std::size_t k = 1; k <= horizon; ++k) {
        auto dk = attaining(mdp, alpha, trace[k - 1], trace[k]);
        if (!std::includes(d.begin(), d.end(), dk.begin(), dk.end())) n = static_cast<unsigned>(k + 1);
    }
    return n;
}

}  // namespace oracle
