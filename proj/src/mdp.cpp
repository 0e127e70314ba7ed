#include "turnpike/mdp.hpp"

#include "turnpike/errors.hpp"
#include "turnpike/limits.hpp"

#include <algorithm>
#include <limits>

namespace turnpike {

std::uint64_t Mdp::num_rules() const {
    std::uint64_t total = 1;
    for (const auto& a : actions) {
        if (a.empty()) return 0;
        if (total > std::numeric_limits<std::uint64_t>::max() / a.size())
            return std::numeric_limits<std::uint64_t>::max();
        total *= a.size();
    }
    return total;
}

const DecisionRule& MarkovPrefix::at(std::size_t t) const {
    if (t < rules.size()) return rules[t];
    if (tail) return *tail;
    throw InsufficientRules("Markov prefix has " + std::to_string(rules.size()) +
                            " rules and no tail; step " + std::to_string(t) + " requested");
}

ValidationReport validate(const Mdp& mdp) {
    ValidationReport report;
    auto add = [&](std::string where, std::string msg) {
        report.violations.push_back({std::move(where), std::move(msg)});
    };
    const std::size_t m = mdp.num_states();
    if (m == 0) add("states", "no states");
    std::set<std::string> seen;
    for (const auto& s : mdp.states)
        if (!seen.insert(s).second) add(s, "duplicate state id");
    if (mdp.actions.size() != m) add("actions", "action lists do not match the state count");
    if (mdp.transition.size() != m || mdp.reward.size() != m)
        add("transitions", "transition or reward table does not match the state count");
    if (mdp.terminal.size() != m) add("terminal", "terminal vector length differs from state count");
    if (!report.ok()) return report;

    for (std::size_t x = 0; x < m; ++x) {
        const auto& name = mdp.states[x];
        if (mdp.actions[x].empty()) add(name, "empty action set");
        std::set<std::string> acts;
        for (const auto& a : mdp.actions[x])
            if (!acts.insert(a).second) add(name + "/" + a, "duplicate action id");
        if (mdp.transition[x].size() != mdp.actions[x].size() ||
            mdp.reward[x].size() != mdp.actions[x].size()) {
            add(name, "transition or reward rows do not match the action count");
            continue;
        }
        for (std::size_t a = 0; a < mdp.actions[x].size(); ++a) {
            const auto where = name + "/" + mdp.actions[x][a];
            const auto& row = mdp.transition[x][a];
            if (row.size() != m) {
                add(where, "transition row has " + std::to_string(row.size()) + " entries, expected " +
                               std::to_string(m));
                continue;
            }
            Rational sum = 0;
            bool in_range = true;
            for (const auto& p : row) {
                if (p < 0 || p > 1) in_range = false;
                sum += p;
            }
            if (!in_range) add(where, "probability outside [0,1]");
            if (sum != 1) add(where, "row sum " + to_string(sum) + " != 1");
        }
    }
    return report;
}

void require_valid(const Mdp& mdp) {
    auto report = validate(mdp);
    if (report.ok()) return;
    std::string msg = "invalid MDP:";
    for (const auto& v : report.violations) msg += " [" + v.where + ": " + v.message + "]";
    throw InputError(msg);
}

std::vector<DecisionRule> enumerate_decision_rules(const Mdp& mdp, std::uint64_t cap) {
    std::uint64_t total = mdp.num_rules();
    if (total > cap) throw CapExceeded("enumeration", total, cap);
    std::vector<DecisionRule> out;
    out.reserve(total);
    const std::size_t m = mdp.num_states();
    DecisionRule cur{std::vector<std::size_t>(m, 0)};
    if (total == 0) return out;
    while (true) {
        out.push_back(cur);
        // Increment the last state first so the first state is most significant.
        std::size_t x = m;
        while (x > 0) {
            --x;
            if (++cur.choice[x] < mdp.num_actions(x)) break;
            cur.choice[x] = 0;
            if (x == 0) return out;
        }
        if (m == 0) return out;
    }
}

std::vector<DecisionRule> enumerate_decision_rules(const Mdp& mdp) {
    return enumerate_decision_rules(mdp, Caps::from_env().enumeration);
}

std::uint64_t rule_index(const Mdp& mdp, const DecisionRule& rule) {
    std::uint64_t idx = 0;
    for (std::size_t x = 0; x < mdp.num_states(); ++x) idx = idx * mdp.num_actions(x) + rule.choice[x];
    return idx;
}

std::string rule_label(const Mdp& mdp, const DecisionRule& rule) {
    return "phi" + std::to_string(rule_index(mdp, rule) + 1);
}

std::size_t action_index(const Mdp& mdp, std::size_t state, const std::string& action) {
    const auto& acts = mdp.actions.at(state);
    auto it = std::find(acts.begin(), acts.end(), action);
    if (it == acts.end())
        throw InputError("unknown action \"" + action + "\" in state \"" + mdp.states[state] + "\"");
    return static_cast<std::size_t>(it - acts.begin());
}

std::size_t state_index(const Mdp& mdp, const std::string& state) {
    auto it = std::find(mdp.states.begin(), mdp.states.end(), state);
    if (it == mdp.states.end()) throw InputError("unknown state \"" + state + "\"");
    return static_cast<std::size_t>(it - mdp.states.begin());
}

RationalMatrix policy_matrix(const Mdp& mdp, const DecisionRule& rule) {
    RationalMatrix p(mdp.num_states());
    for (std::size_t x = 0; x < mdp.num_states(); ++x) p[x] = mdp.transition[x][rule.choice[x]];
    return p;
}

RationalVector policy_reward(const Mdp& mdp, const DecisionRule& rule) {
    RationalVector r(mdp.num_states());
    for (std::size_t x = 0; x < mdp.num_states(); ++x) r[x] = mdp.reward[x][rule.choice[x]];
    return r;
}

RationalVector push_forward(const Mdp& mdp, const DecisionRule& rule, const RationalVector& v) {
    RationalVector out(mdp.num_states(), Rational(0));
    for (std::size_t x = 0; x < mdp.num_states(); ++x) {
        const auto& row = mdp.transition[x][rule.choice[x]];
        for (std::size_t y = 0; y < row.size(); ++y)
            if (row[y] != 0) out[x] += row[y] * v[y];
    }
    return out;
}

Spreads spreads(const Mdp& mdp) {
    Spreads s;
    bool first = true;
    Rational rmax, rmin;
    for (const auto& row : mdp.reward) {
        for (const auto& r : row) {
            if (first || r > rmax) rmax = r;
            if (first || r < rmin) rmin = r;
            first = false;
        }
    }
    if (first) rmax = rmin = 0;
    Rational smax = 0, smin = 0;
    for (std::size_t x = 0; x < mdp.terminal.size(); ++x) {
        if (x == 0 || mdp.terminal[x] > smax) smax = mdp.terminal[x];
        if (x == 0 || mdp.terminal[x] < smin) smin = mdp.terminal[x];
    }
    s.r1 = std::max(abs(rmax), abs(rmin));
    s.r2 = std::max(abs(smax), abs(smin));
    s.r = std::max(s.r1, s.r2);
    s.f1 = (rmax + rmin) / 2;
    s.f2 = (smax + smin) / 2;
    s.r1_star = (rmax - rmin) / 2;
    s.r2_star = (smax - smin) / 2;
    s.r_star = std::max(s.r1_star, s.r2_star);
    return s;
}

Balanced balance(const Mdp& mdp) {
    Spreads s = spreads(mdp);
    Mdp out = mdp;
    for (auto& row : out.reward)
        for (auto& r : row) r -= s.f1;
    for (auto& t : out.terminal) t -= s.f2;
    Spreads balanced = spreads(out);
    return {std::move(out), balanced};
}

Mdp with_zero_terminal(const Mdp& mdp) {
    Mdp out = mdp;
    for (auto& t : out.terminal) t = 0;
    return out;
}

}  // namespace turnpike
