#include "turnpike/bellman.hpp"

#include "turnpike/errors.hpp"
#include "turnpike/linalg.hpp"

#include <algorithm>

namespace turnpike {

bool RuleProduct::contains(const DecisionRule& rule) const {
    if (rule.choice.size() != allowed.size()) return false;
    for (std::size_t x = 0; x < allowed.size(); ++x)
        if (!std::binary_search(allowed[x].begin(), allowed[x].end(), rule.choice[x])) return false;
    return true;
}

std::uint64_t RuleProduct::size() const {
    if (allowed.empty()) return 0;
    std::uint64_t n = 1;
    for (const auto& a : allowed) {
        if (a.empty()) return 0;
        if (n > UINT64_MAX / a.size()) return UINT64_MAX;
        n *= a.size();
    }
    return n;
}

DecisionRule RuleProduct::smallest() const {
    DecisionRule r;
    for (const auto& a : allowed) {
        if (a.empty()) throw InternalError("smallest() of an empty rule set");
        r.choice.push_back(a.front());
    }
    return r;
}

RuleSet RuleProduct::expand(std::uint64_t cap) const {
    RuleSet out;
    std::uint64_t n = size();
    if (n == 0) return out;
    if (n > cap) throw CapExceeded("enumeration", n, cap);
    const std::size_t m = allowed.size();
    std::vector<std::size_t> pos(m, 0);
    while (true) {
        DecisionRule r;
        for (std::size_t x = 0; x < m; ++x) r.choice.push_back(allowed[x][pos[x]]);
        out.insert(std::move(r));
        std::size_t x = m;
        while (true) {
            if (x == 0) return out;
            --x;
            if (++pos[x] < allowed[x].size()) break;
            pos[x] = 0;
        }
    }
}

void require_discount(const Rational& alpha) {
    if (alpha < 0 || alpha >= 1)
        throw InputError("discount factor must lie in [0,1), got " + to_string(alpha));
}

std::vector<RationalVector> action_values(const Mdp& mdp, const Rational& alpha,
                                          const RationalVector& v) {
    std::vector<RationalVector> q(mdp.num_states());
    for (std::size_t x = 0; x < mdp.num_states(); ++x) {
        q[x].resize(mdp.num_actions(x));
        for (std::size_t a = 0; a < mdp.num_actions(x); ++a) {
            Rational ev = 0;
            const auto& row = mdp.transition[x][a];
            for (std::size_t y = 0; y < row.size(); ++y)
                if (row[y] != 0) ev += row[y] * v[y];
            q[x][a] = mdp.reward[x][a] + alpha * ev;
        }
    }
    return q;
}

RationalVector apply_policy_operator(const Mdp& mdp, const DecisionRule& rule, const Rational& alpha,
                                     const RationalVector& v) {
    RationalVector pv = push_forward(mdp, rule, v);
    RationalVector out(mdp.num_states());
    for (std::size_t x = 0; x < mdp.num_states(); ++x)
        out[x] = mdp.reward[x][rule.choice[x]] + alpha * pv[x];
    return out;
}

BellmanStep apply_bellman(const Mdp& mdp, const Rational& alpha, const RationalVector& v) {
    auto q = action_values(mdp, alpha, v);
    BellmanStep step;
    step.value.resize(mdp.num_states());
    step.argmax.allowed.resize(mdp.num_states());
    for (std::size_t x = 0; x < mdp.num_states(); ++x) {
        const Rational& best = *std::max_element(q[x].begin(), q[x].end());
        step.value[x] = best;
        for (std::size_t a = 0; a < q[x].size(); ++a)
            if (q[x][a] == best) step.argmax.allowed[x].push_back(a);
    }
    return step;
}

std::vector<ValueIterationStep> value_iteration(const Mdp& mdp, const Rational& alpha,
                                                std::size_t n_max) {
    require_discount(alpha);
    std::vector<ValueIterationStep> trace;
    trace.reserve(n_max + 1);
    trace.push_back({0, mdp.terminal, {}});
    for (std::size_t n = 1; n <= n_max; ++n) {
        auto step = apply_bellman(mdp, alpha, trace.back().value);
        trace.push_back({n, std::move(step.value), std::move(step.argmax)});
    }
    return trace;
}

RationalVector evaluate_deterministic(const Mdp& mdp, const DecisionRule& rule, const Rational& alpha) {
    require_discount(alpha);
    const std::size_t m = mdp.num_states();
    RationalMatrix a = policy_matrix(mdp, rule);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a[i][j] = Rational(i == j ? 1 : 0) - alpha * a[i][j];
    RationalVector v = solve_linear(a, policy_reward(mdp, rule));
    if (apply_policy_operator(mdp, rule, alpha, v) != v)
        throw InternalError("stationary value is not a fixed point");
    return v;
}

RationalVector evaluate_markov(const Mdp& mdp, const MarkovPrefix& prefix, const Rational& alpha,
                               std::size_t n) {
    require_discount(alpha);
    if (n > prefix.rules.size() && !prefix.tail)
        throw InsufficientRules("Markov prefix has " + std::to_string(prefix.rules.size()) +
                                " rules, horizon " + std::to_string(n) + " requested");
    RationalVector v = mdp.terminal;
    for (std::size_t t = n; t > 0; --t) v = apply_policy_operator(mdp, prefix.at(t - 1), alpha, v);
    return v;
}

OptimalSets optimal_set(const Mdp& mdp, const Rational& alpha) {
    require_discount(alpha);
    OptimalSets out;
    out.alpha = alpha;
    DecisionRule policy{std::vector<std::size_t>(mdp.num_states(), 0)};
    while (true) {
        ++out.iterations;
        RationalVector v = evaluate_deterministic(mdp, policy, alpha);
        auto step = apply_bellman(mdp, alpha, v);
        bool stable = true;
        for (std::size_t x = 0; x < mdp.num_states(); ++x) {
            const auto& best = step.argmax.allowed[x];
            if (std::binary_search(best.begin(), best.end(), policy.choice[x])) continue;
            policy.choice[x] = best.front();
            stable = false;
        }
        if (stable) {
            if (step.value != v) throw InternalError("policy iteration ended off the optimality equation");
            out.value = std::move(v);
            out.optimal = std::move(step.argmax);
            out.policy = policy;
            return out;
        }
    }
}

MarkovPrefix rolling_horizon_policy(const Mdp& mdp, const Rational& alpha, std::size_t n) {
    if (n == 0) throw InputError("rolling horizon needs n >= 1");
    auto trace = value_iteration(mdp, alpha, n);
    MarkovPrefix prefix;
    for (std::size_t i = 0; i < n; ++i) prefix.rules.push_back(trace[n - i].first_step_optimal.smallest());
    return prefix;
}

}  // namespace turnpike
