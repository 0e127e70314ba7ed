#include "turnpike/small_discount.hpp"

#include "turnpike/bellman.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/partition.hpp"
#include "turnpike/turnpike.hpp"

namespace turnpike {
namespace {

std::string describe(const Mdp& mdp, const RuleSet& s) {
    std::string out = "{";
    for (const auto& r : s) out += (out.size() > 1 ? ", " : "") + rule_label(mdp, r);
    return out + "}";
}

}  // namespace

std::vector<Rational> interior_grid(const Rational& lo, const Rational& hi, std::size_t count) {
    std::vector<Rational> out;
    for (std::size_t i = 1; i <= count; ++i)
        out.push_back(lo + (hi - lo) * ratio(static_cast<long>(i), static_cast<long>(count + 1)));
    return out;
}

FiltrationReport policy_filtration(const Mdp& mdp, const Caps& caps) {
    require_valid(mdp);
    Balanced bal = balance(mdp);
    const Mdp& b = bal.mdp;
    const std::size_t m = b.num_states();
    auto rules = enumerate_decision_rules(b, caps.enumeration);

    std::vector<std::size_t> current(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) current[i] = i;
    std::vector<RationalVector> pushed(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) pushed[i] = policy_reward(b, rules[i]);

    FiltrationReport rep;
    rep.f_chain.push_back(RuleSet(rules.begin(), rules.end()));
    std::optional<Rational> c;
    for (std::size_t n = 0; n < m; ++n) {
        if (n > 0)
            for (std::size_t i : current) pushed[i] = push_forward(b, rules[i], pushed[i]);
        RationalVector best = pushed[current.front()];
        std::vector<std::size_t> states;
        for (std::size_t x = 0; x < m; ++x) {
            bool differ = false;
            for (std::size_t i : current) {
                if (pushed[i][x] != best[x]) differ = true;
                if (pushed[i][x] > best[x]) best[x] = pushed[i][x];
            }
            if (differ) states.push_back(x);
        }
        std::vector<std::size_t> next, dropped;
        for (std::size_t i : current) (pushed[i] == best ? next : dropped).push_back(i);
        if (next.empty()) throw InternalError("no rule dominates at step " + std::to_string(n));
        if (!states.empty()) {
            // Members of F_n share P^n r, so any of them measures the gap.
            const auto& top = pushed[next.front()];
            for (std::size_t j : dropped) {
                Rational gap = 0;
                for (std::size_t x : states) gap = std::max(gap, Rational(top[x] - pushed[j][x]));
                if (!c || gap < *c) c = gap;
            }
        }
        current = std::move(next);
        RuleSet f;
        for (std::size_t i : current) f.insert(rules[i]);
        rep.f_chain.push_back(std::move(f));
        rep.x_chain.push_back(std::move(states));
        rep.c_chain.push_back(c);
    }

    rep.l_value = 0;
    rep.jump_indices = {0};
    for (std::size_t n = 1; n < m; ++n) {
        if (rep.f(n) != rep.f(n - 1)) {
            rep.l_value = n;
            rep.jump_indices.push_back(n);
        }
    }
    rep.h_value = rep.jump_indices.size() - 1;
    rep.f_chain.resize(rep.l_value + 2);
    rep.x_chain.resize(rep.l_value + 1);
    rep.c_chain.resize(rep.l_value + 1);
    for (const auto& cn : rep.c_chain) {
        if (!cn) {
            rep.delta_chain.push_back(1);
            rep.delta_tilde_chain.push_back(1);
            continue;
        }
        rep.delta_chain.push_back(*cn / (2 * bal.spreads.r_star + *cn));
        rep.delta_tilde_chain.push_back(*cn / (2 * bal.spreads.r1_star + *cn));
    }
    return rep;
}

SmallDiscountConstants small_discount_constants(const FiltrationReport& f) {
    return {f.c_chain.back(), f.delta(), f.delta_tilde()};
}

SmallDiscountConstants small_discount_constants(const Mdp& mdp, const Caps& caps) {
    return small_discount_constants(policy_filtration(mdp, caps));
}

std::vector<CheckResult> small_discount_checks(const Mdp& mdp, std::size_t grid, const Caps& caps) {
    auto filt = policy_filtration(mdp, caps);
    auto report = canonical_partition(mdp, caps);
    std::vector<CheckResult> out;

    {
        CheckResult c;
        c.name = "F_0 equals D(0)";
        RuleSet d0 = optimal_set(mdp, 0).optimal.expand(caps.enumeration);
        c.passed = d0 == filt.f(0);
        c.detail = "F_0 = " + describe(mdp, filt.f(0)) + ", D(0) = " + describe(mdp, d0);
        out.push_back(std::move(c));
    }
    {
        CheckResult c;
        c.name = "F_L equals D on (0, Delta~_L)";
        for (const auto& a : interior_grid(0, filt.delta_tilde(), grid)) {
            RuleSet d = optimal_set(mdp, a).optimal.expand(caps.enumeration);
            if (d != filt.f(filt.l_value)) {
                c.passed = false;
                c.detail = "D(" + to_string(a) + ") = " + describe(mdp, d);
                break;
            }
        }
        if (c.passed) c.detail = "F_L = " + describe(mdp, filt.f(filt.l_value));
        out.push_back(std::move(c));
    }
    {
        CheckResult c;
        c.name = "first positive irregular point is at least Delta~_L";
        std::optional<IsolatedRoot> first;
        for (const auto& p : report.irregular_points) {
            IsolatedRoot q = p.point;
            if (compare(q, Rational(0)) > 0) {
                first = q;
                break;
            }
        }
        if (!first) {
            c.detail = "no irregular point in (0,1)";
        } else {
            c.passed = compare(*first, filt.delta_tilde()) >= 0;
            c.detail = "a_1 = " + first->to_string() + ", Delta~_L = " + to_string(filt.delta_tilde());
        }
        out.push_back(std::move(c));
    }
    {
        CheckResult c;
        c.name = "N <= L+1 on (0, Delta_L)";
        unsigned highest = 0;
        for (const auto& a : interior_grid(0, filt.delta(), grid)) {
            unsigned n = turnpike_integer(mdp, a, caps).n_value;
            highest = std::max(highest, n);
            if (n > filt.l_value + 1) {
                c.passed = false;
                c.detail = "N(" + to_string(a) + ") = " + std::to_string(n);
                break;
            }
        }
        if (c.passed)
            c.detail = "max sampled N = " + std::to_string(highest) + ", L+1 = " + std::to_string(filt.l_value + 1);
        out.push_back(std::move(c));
    }
    {
        CheckResult c;
        c.name = "N = 1 on [0, Delta_0) when 0 is regular";
        bool zero_regular = report.irregular_points.empty() || !report.irregular_points.front().point.is_exact() ||
                            report.irregular_points.front().point.value() != 0;
        if (!zero_regular) {
            c.applicable = false;
            c.detail = "0 is irregular";
        } else {
            auto samples = interior_grid(0, filt.delta_chain.front(), grid);
            samples.insert(samples.begin(), Rational(0));
            for (const auto& a : samples) {
                unsigned n = turnpike_integer(mdp, a, caps).n_value;
                if (n != 1) {
                    c.passed = false;
                    c.detail = "N(" + to_string(a) + ") = " + std::to_string(n);
                    break;
                }
            }
            if (c.passed) c.detail = "Delta_0 = " + to_string(filt.delta_chain.front());
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace turnpike
