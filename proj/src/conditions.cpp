#include "turnpike/conditions.hpp"

#include "turnpike/bellman.hpp"
#include "turnpike/equivalence.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/partition.hpp"
#include "turnpike/small_discount.hpp"
#include "turnpike/turnpike.hpp"
#include "turnpike/value_function.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace turnpike {
namespace {

using Pair = std::pair<RationalVector, RationalVector>;
using Level = std::set<Pair>;

void require_interior(const Rational& point) {
    if (point <= 0 || point >= 1) throw InputError("point must lie in (0, 1): " + to_string(point));
}

OneSidedSets irregular_sets(const Mdp& mdp, const Rational& point, const Caps& caps) {
    require_valid(mdp);
    require_interior(point);
    auto report = canonical_partition(mdp, caps);
    if (!locate(report, point).at_point) throw NotIrregularPoint(to_string(point) + " is a regular point");
    return one_sided_optimal_sets(report, point);
}

std::string set_label(const Mdp& mdp, const RuleSet& s) {
    std::string out = "{";
    for (const auto& r : s) out += (out.size() > 1 ? ", " : "") + rule_label(mdp, r);
    return out + "}";
}

RationalVector scaled_sum(const RationalVector& a, const Rational& c, const RationalVector& b) {
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + c * b[i];
    return out;
}

/// (v, v') -> (r + aPv, Pv + aPv'): prepend `rule` to a policy.
Pair prepend(const Mdp& mdp, const DecisionRule& rule, const Rational& alpha, const Pair& p) {
    RationalVector pv = push_forward(mdp, rule, p.first);
    RationalVector pd = push_forward(mdp, rule, p.second);
    return {scaled_sum(policy_reward(mdp, rule), alpha, pv), scaled_sum(pv, alpha, pd)};
}

Level advance(const Mdp& mdp, const std::vector<DecisionRule>& rules, const Rational& alpha, const Level& level,
              std::uint64_t cap) {
    const std::uint64_t requested = level.size() * rules.size();
    if (requested > cap) throw CapExceeded("prefixes", requested, cap);
    std::vector<std::vector<Pair>> parts(rules.size());
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        workers.emplace_back([&, i] {
            parts[i].reserve(level.size());
            for (const auto& p : level) parts[i].push_back(prepend(mdp, rules[i], alpha, p));
        });
    }
    for (auto& w : workers) w.join();
    Level next;
    for (auto& part : parts) next.insert(std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    return next;
}

/// Per-state sup (minus) or inf (plus) of (P(phi) - P(psi))(v + a v') over the level.
RationalVector extremum(const Mdp& mdp, const DecisionRule& phi, const DecisionRule& psi, const Rational& alpha,
                        const Level& level, Side side) {
    std::optional<RationalVector> best;
    for (const auto& p : level) {
        RationalVector u = scaled_sum(p.first, alpha, p.second);
        RationalVector a = push_forward(mdp, phi, u);
        RationalVector b = push_forward(mdp, psi, u);
        for (std::size_t x = 0; x < a.size(); ++x) a[x] -= b[x];
        if (!best) {
            best = std::move(a);
            continue;
        }
        for (std::size_t x = 0; x < a.size(); ++x)
            if (side == Side::Minus ? a[x] > (*best)[x] : a[x] < (*best)[x]) (*best)[x] = a[x];
    }
    return *best;
}

Rational threshold(const Rational& alpha, std::size_t k, const Rational& r1_star) {
    Rational power = 1;
    for (std::size_t i = 0; i < k; ++i) power *= alpha;
    Rational rest = 1 - alpha;
    return 2 * power * (alpha / (rest * rest) + Rational(static_cast<long>(k + 1)) / rest) * r1_star;
}

std::string name(char letter, Side side) {
    return std::string(1, letter) + (side == Side::Minus ? "-" : "+");
}

}  // namespace

std::string to_string(Side side) { return side == Side::Minus ? "minus" : "plus"; }

std::string to_string(Truth truth) {
    switch (truth) {
        case Truth::True: return "true";
        case Truth::False: return "false";
        case Truth::Inconclusive: return "inconclusive";
    }
    return "";
}

std::string to_string(ConditionMethod method) {
    switch (method) {
        case ConditionMethod::PropoACertificate: return "propoA-certificate";
        case ConditionMethod::DefinitionWindow: return "definition-window";
        case ConditionMethod::DerivativeShortcut: return "derivative-shortcut";
        case ConditionMethod::ProposiBBThreshold: return "proposiBB-threshold";
    }
    return "";
}

std::string to_string(SideBound bound) {
    switch (bound) {
        case SideBound::Bounded: return "bounded";
        case SideBound::Unbounded: return "unbounded";
        case SideBound::UnboundedEvidence: return "unbounded_evidence";
        case SideBound::Unknown: return "unknown";
    }
    return "";
}

RationalVector derivative_difference(const Mdp& mdp, const DecisionRule& phi, const DecisionRule& psi,
                                     const MarkovPrefix& prefix, const Rational& alpha, std::size_t n) {
    const std::size_t m = mdp.num_states();
    if (n == 0) return RationalVector(m);
    Pair tail{mdp.terminal, RationalVector(m)};
    for (std::size_t t = n - 1; t >= 1; --t) tail = prepend(mdp, prefix.at(t - 1), alpha, tail);
    Pair a = prepend(mdp, phi, alpha, tail);
    Pair b = prepend(mdp, psi, alpha, tail);
    for (std::size_t x = 0; x < m; ++x) a.second[x] -= b.second[x];
    return a.second;
}

RationalVector value_derivative(const Mdp& mdp, const DecisionRule& rule, const Rational& alpha) {
    RationalVector out;
    for (const auto& f : value_rational_function(mdp, rule)) out.push_back(f.derivative()(alpha));
    return out;
}

ConditionVerdict check_condition_A(const Mdp& mdp, const Rational& point, Side side, HorizonWindow window,
                                   const Caps& caps) {
    OneSidedSets sets = irregular_sets(mdp, point, caps);
    const RuleSet& own = side == Side::Minus ? sets.minus : sets.plus;
    ConditionVerdict v;
    v.condition = name('A', side);
    v.point = point;
    const std::size_t n_value = turnpike_integer(mdp, point, caps).n_value;
    const std::size_t last = std::max(window.last, n_value + window.first);
    auto trace = value_iteration(mdp, point, last);

    if (sets.minus.size() == 1 && sets.plus.size() == 1) {
        const DecisionRule& phi = *sets.minus.begin();
        const DecisionRule& psi = *sets.plus.begin();
        const bool non_touching = phi != psi && sets.at.size() == 2;
        RationalVector value = optimal_set(mdp, point).value;
        for (std::size_t k = n_value - 1; k <= last; ++k) {
            RationalVector w = value;
            for (std::size_t x = 0; x < w.size(); ++x) w[x] -= trace[k].value[x];
            if (!pushforwards_equal(mdp, phi, w, psi, w)) continue;
            v.witnesses.push_back("P^t(" + rule_label(mdp, phi) + ") w = P^t(" + rule_label(mdp, psi) +
                                  ") w for all t, w = V - V_" + std::to_string(k));
            if (non_touching) {
                v.holds = Truth::True;
                v.method = ConditionMethod::PropoACertificate;
                v.horizon_used = k;
                return v;
            }
            break;
        }
        if (non_touching)
            v.witnesses.push_back("certificate not found for K in [" + std::to_string(n_value - 1) + ", " +
                                  std::to_string(last) + "]");
    }

    v.method = ConditionMethod::DefinitionWindow;
    v.horizon_used = last;
    std::vector<std::size_t> empty;
    for (std::size_t n = window.first; n <= last; ++n) {
        bool meets = std::any_of(own.begin(), own.end(),
                                 [&](const DecisionRule& r) { return trace[n].first_step_optimal.contains(r); });
        if (!meets) empty.push_back(n);
    }
    if (empty.empty()) {
        v.witnesses.push_back("D_n meets " + set_label(mdp, own) + " for n in [" + std::to_string(window.first) +
                              ", " + std::to_string(last) + "]");
    } else {
        v.witnesses.push_back("D_n misses " + set_label(mdp, own) + " at " + std::to_string(empty.size()) +
                              " horizons in the window, last at n = " + std::to_string(empty.back()));
    }
    return v;
}

ConditionVerdict check_condition_B(const Mdp& mdp, const Rational& point, Side side,
                                   std::pair<std::size_t, std::size_t> k_range, const Caps& caps) {
    const Mdp zero = with_zero_terminal(mdp);
    OneSidedSets sets = irregular_sets(zero, point, caps);
    const RuleSet& own = side == Side::Minus ? sets.minus : sets.plus;
    RuleSet others;
    std::set_difference(sets.at.begin(), sets.at.end(), own.begin(), own.end(),
                        std::inserter(others, others.end()));
    ConditionVerdict v;
    v.condition = name('B', side);
    v.point = point;
    v.method = ConditionMethod::ProposiBBThreshold;
    if (others.empty()) {
        v.holds = Truth::True;
        v.witnesses.push_back("D(a*) has no rule outside " + set_label(zero, own));
        return v;
    }

    for (const auto& phi : own) {
        RationalVector dphi = value_derivative(zero, phi, point);
        for (const auto& psi : others) {
            if (dphi != value_derivative(zero, psi, point)) continue;
            PairWitness w;
            w.phi = phi;
            w.psi = psi;
            v.pairs.push_back(w);
            v.witnesses.push_back(rule_label(zero, phi) + " and " + rule_label(zero, psi) +
                                  " have equal value derivatives");
        }
    }
    if (!v.pairs.empty()) {
        v.holds = Truth::False;
        v.method = ConditionMethod::DerivativeShortcut;
        return v;
    }

    const std::vector<DecisionRule> rules(sets.at.begin(), sets.at.end());
    const Rational r1_star = spreads(zero).r1_star;
    const std::size_t m = zero.num_states();
    Level finite{{RationalVector(m), RationalVector(m)}};
    Level tails;
    for (const auto& r : rules) tails.insert({evaluate_deterministic(zero, r, point), value_derivative(zero, r, point)});

    for (std::size_t k = 0; k <= k_range.second; ++k) {
        if (k > 0) {
            finite = advance(zero, rules, point, finite, caps.prefixes);
            tails = advance(zero, rules, point, tails, caps.prefixes);
        }
        if (k < k_range.first) continue;
        v.pairs.clear();
        v.horizon_used = k;
        v.threshold = threshold(point, k, r1_star);
        bool all = true;
        for (const auto& phi : own) {
            for (const auto& psi : others) {
                RationalVector ext = extremum(zero, phi, psi, point, finite, side);
                std::size_t x = 0;
                for (std::size_t y = 1; y < m; ++y)
                    if (side == Side::Minus ? ext[y] < ext[x] : ext[y] > ext[x]) x = y;
                PairWitness w;
                w.phi = phi;
                w.psi = psi;
                w.state = x;
                w.extremum = ext[x];
                w.tail_extremum = extremum(zero, phi, psi, point, tails, side)[x];
                w.decisive = side == Side::Minus ? ext[x] < -*v.threshold : ext[x] > *v.threshold;
                all = all && w.decisive;
                v.pairs.push_back(std::move(w));
            }
        }
        if (all) {
            v.holds = Truth::True;
            for (const auto& w : v.pairs)
                v.witnesses.push_back(rule_label(zero, w.phi) + " vs " + rule_label(zero, w.psi) + " at " +
                                      zero.states[w.state] + ": " + to_string(w.extremum) + " beats threshold " +
                                      to_string(*v.threshold));
            return v;
        }
    }
    v.witnesses.push_back("threshold not beaten for K up to " + std::to_string(k_range.second));
    return v;
}

BoundednessReport boundedness_verdict(const Mdp& mdp, const Rational& point, const Caps& caps) {
    BoundednessReport out;
    out.point = point;
    const Rational delta = policy_filtration(mdp, caps).delta();
    for (Side side : {Side::Minus, Side::Plus}) {
        SideReport& rep = side == Side::Minus ? out.left : out.right;
        rep.condition_a = check_condition_A(mdp, point, side, {}, caps);
        rep.condition_b = check_condition_B(mdp, point, side, {0, 12}, caps);
        Rational step = ratio(1, 8);
        for (int k = 3; k <= 8; ++k, step /= 2) {
            Rational a = side == Side::Minus ? Rational(point - step) : Rational(point + step);
            if (a <= 0 || a >= 1) continue;
            try {
                rep.samples.emplace_back(a, turnpike_integer(mdp, a, caps).n_value);
            } catch (const CapExceeded&) {
                break;
            }
        }
        bool growing = rep.samples.size() >= 2 && rep.samples.back().second > rep.samples.front().second;
        for (std::size_t i = 1; i < rep.samples.size(); ++i)
            growing = growing && rep.samples[i].second >= rep.samples[i - 1].second;

        if (side == Side::Minus && point <= delta) {
            rep.bound = SideBound::Bounded;
            rep.reason = "N <= L+1 on (0, Delta_L) and a* <= Delta_L = " + to_string(delta);
        } else if (rep.condition_a.holds == Truth::True && rep.condition_b.holds == Truth::True) {
            rep.bound = SideBound::Bounded;
            rep.reason = "Conditions A and B hold";
        } else if (rep.condition_a.holds == Truth::False) {
            rep.bound = SideBound::Unbounded;
            rep.reason = "Condition A fails";
        } else if (growing) {
            rep.bound = SideBound::UnboundedEvidence;
            rep.reason = "sampled N grows toward a*";
        } else {
            rep.bound = SideBound::Unknown;
            rep.reason = "no sufficient or necessary condition decides this side";
        }
    }
    return out;
}

}  // namespace turnpike
