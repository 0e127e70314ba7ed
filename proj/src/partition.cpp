#include "turnpike/partition.hpp"

#include "turnpike/errors.hpp"
#include "turnpike/value_function.hpp"

#include <algorithm>

namespace turnpike {
namespace {

using Values = std::vector<RationalFunction>;

/// Polynomial whose roots in [0,1) are exactly the points where a == b.
/// Denominators of value functions are positive there, so only numerators
/// matter. Returns zero when a and b are identical.
Polynomial agreement_polynomial(const Values& a, const Values& b) {
    Polynomial g;
    for (std::size_t x = 0; x < a.size(); ++x) g = gcd(g, (a[x] - b[x]).num());
    return g;
}

bool dominates_at(const Values& a, const Values& b, const Rational& t) {
    for (std::size_t x = 0; x < a.size(); ++x)
        if (a[x](t) < b[x](t)) return false;
    return true;
}

/// Among classes that are all optimal at e, the one optimal just right of e.
std::size_t right_class(const RuleValues& table, const std::vector<std::size_t>& candidates,
                        IsolatedRoot e) {
    if (candidates.size() == 1) return candidates.front();
    IsolatedRoot one = IsolatedRoot::exact(1);
    std::optional<IsolatedRoot> nearest;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            const auto& a = table.class_value(candidates[i]);
            const auto& b = table.class_value(candidates[j]);
            for (std::size_t x = 0; x < a.size(); ++x) {
                Polynomial d = (a[x] - b[x]).num();
                if (d.degree() < 1) continue;
                auto roots = isolate_roots(d, e, one);
                if (roots.empty()) continue;
                if (!nearest || compare(roots.front(), *nearest) < 0) nearest = roots.front();
            }
        }
    }
    Rational t = nearest ? rational_between(e, *nearest) : rational_between(e, Rational(1));
    for (std::size_t c : candidates) {
        bool best = true;
        for (std::size_t d : candidates)
            if (d != c && !dominates_at(table.class_value(c), table.class_value(d), t)) best = false;
        if (best) return c;
    }
    throw InternalError("no dominating class right of " + e.to_string());
}

IsolatedRoot exact_one() { return IsolatedRoot::exact(1); }

/// True iff at != minus ∪ plus for product sets with minus, plus ⊆ at.
bool product_touching(const RuleProduct& at, const RuleProduct& minus, const RuleProduct& plus) {
    auto has = [](const std::vector<std::size_t>& s, std::size_t a) {
        return std::binary_search(s.begin(), s.end(), a);
    };
    std::vector<std::size_t> outside_minus, outside_plus;
    for (std::size_t x = 0; x < at.allowed.size(); ++x) {
        bool om = false, op = false;
        for (std::size_t a : at.allowed[x]) {
            bool in_minus = has(minus.allowed[x], a), in_plus = has(plus.allowed[x], a);
            if (!in_minus && !in_plus) return true;
            om = om || !in_minus;
            op = op || !in_plus;
        }
        if (om) outside_minus.push_back(x);
        if (op) outside_plus.push_back(x);
    }
    if (outside_minus.empty() || outside_plus.empty()) return false;
    if (outside_minus.size() > 1 || outside_plus.size() > 1) return true;
    return outside_minus.front() != outside_plus.front();
}

std::vector<std::vector<Polynomial>> piece_action_values(const Mdp& mdp,
                                                         const std::vector<Polynomial>& w) {
    const Polynomial alpha = Polynomial::x();
    std::vector<std::vector<Polynomial>> q(mdp.num_states());
    for (std::size_t x = 0; x < mdp.num_states(); ++x) {
        for (std::size_t a = 0; a < mdp.num_actions(x); ++a) {
            Polynomial ev;
            const auto& row = mdp.transition[x][a];
            for (std::size_t y = 0; y < row.size(); ++y)
                if (row[y] != 0) ev += row[y] * w[y];
            q[x].push_back(Polynomial(mdp.reward[x][a]) + alpha * ev);
        }
    }
    return q;
}

RuleProduct argmax_at(const std::vector<std::vector<Polynomial>>& q, IsolatedRoot point) {
    RuleProduct out;
    out.allowed.resize(q.size());
    for (std::size_t x = 0; x < q.size(); ++x) {
        std::size_t best = 0;
        for (std::size_t a = 1; a < q[x].size(); ++a)
            if (sign_at(q[x][a] - q[x][best], point) > 0) best = a;
        for (std::size_t a = 0; a < q[x].size(); ++a)
            if (a == best || sign_at(q[x][a] - q[x][best], point) == 0) out.allowed[x].push_back(a);
    }
    return out;
}

struct Segment {
    IsolatedRoot lo;
    IsolatedRoot hi;
    Rational sample;
    std::vector<Polynomial> value;
    RuleProduct argmax;
};

void sort_unique(std::vector<IsolatedRoot>& roots) {
    for (std::size_t i = 1; i < roots.size(); ++i)
        for (std::size_t j = i; j > 0 && compare(roots[j], roots[j - 1]) < 0; --j)
            std::swap(roots[j], roots[j - 1]);
    std::vector<IsolatedRoot> out;
    for (auto& r : roots)
        if (out.empty() || compare(out.back(), r) != 0) out.push_back(r);
    roots = std::move(out);
}

}  // namespace

RuleSet RuleValues::class_rules(const std::vector<std::size_t>& class_ids) const {
    RuleSet out;
    for (std::size_t c : class_ids)
        for (std::size_t i : classes[c]) out.insert(rules[i]);
    return out;
}

RuleValues rule_values(const Mdp& mdp, const Caps& caps) {
    require_valid(mdp);
    RuleValues t;
    t.rules = enumerate_decision_rules(mdp, caps.enumeration);
    for (std::size_t i = 0; i < t.rules.size(); ++i) {
        t.values.push_back(value_rational_function(mdp, t.rules[i]));
        std::size_t c = 0;
        while (c < t.classes.size() && t.class_value(c) != t.values.back()) ++c;
        if (c == t.classes.size()) t.classes.emplace_back();
        t.classes[c].push_back(i);
        t.class_of.push_back(c);
    }
    return t;
}

std::string PartitionPoint::kind() const {
    if (is_break && is_touching) return "break+touching";
    return is_break ? "break" : "touching";
}

PartitionReport canonical_partition(const Mdp& mdp, const Caps& caps) {
    return canonical_partition(rule_values(mdp, caps));
}

PartitionReport canonical_partition(const RuleValues& table) {
    PartitionReport report;
    const std::size_t nc = table.classes.size();
    const std::size_t m = table.values.front().size();

    RationalVector best(m);
    std::vector<RationalVector> at_zero(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        at_zero[c] = evaluate(table.class_value(c), Rational(0));
        for (std::size_t x = 0; x < m; ++x)
            if (c == 0 || at_zero[c][x] > best[x]) best[x] = at_zero[c][x];
    }
    std::vector<std::size_t> d0;
    for (std::size_t c = 0; c < nc; ++c)
        if (at_zero[c] == best) d0.push_back(c);
    report.d_zero = table.class_rules(d0);

    IsolatedRoot cur = IsolatedRoot::exact(0);
    std::size_t plus = right_class(table, d0, cur);
    if (d0.size() > 1) {
        PartitionPoint p{cur, false, true, {}, report.d_zero, table.class_rules({plus})};
        report.irregular_points.push_back(std::move(p));
    }
    bool first = true;
    IsolatedRoot one = exact_one();
    while (true) {
        std::vector<Polynomial> agree(nc);
        std::optional<IsolatedRoot> next;
        for (std::size_t c = 0; c < nc; ++c) {
            if (c == plus) continue;
            agree[c] = agreement_polynomial(table.class_value(c), table.class_value(plus));
            if (agree[c].degree() < 1) continue;
            auto roots = isolate_roots(agree[c], cur, one);
            if (roots.empty()) continue;
            if (!next || compare(roots.front(), *next) < 0) next = roots.front();
        }
        PartitionInterval interval{cur, next ? *next : one, first && d0.size() == 1, 0,
                                   table.class_rules({plus})};
        interval.sample = next ? rational_between(cur, *next) : rational_between(cur, Rational(1));
        report.intervals.push_back(std::move(interval));
        first = false;
        if (!next) break;

        std::vector<std::size_t> at{plus};
        for (std::size_t c = 0; c < nc; ++c)
            if (c != plus && agree[c].degree() >= 1 && sign_at(agree[c], *next) == 0) at.push_back(c);
        std::sort(at.begin(), at.end());
        std::size_t new_plus = right_class(table, at, *next);
        PartitionPoint p{*next, new_plus != plus, false, table.class_rules({plus}),
                         table.class_rules(at), table.class_rules({new_plus})};
        p.is_touching = at.size() > (p.is_break ? 2u : 1u);
        report.irregular_points.push_back(std::move(p));
        cur = *next;
        plus = new_plus;
    }
    if (!report.irregular_points.empty()) report.blackwell_point = report.irregular_points.back().point;
    return report;
}

Location locate(const PartitionReport& report, const Rational& alpha) {
    if (alpha < 0 || alpha >= 1) throw InputError("point must lie in [0,1), got " + to_string(alpha));
    for (std::size_t i = 0; i < report.irregular_points.size(); ++i) {
        IsolatedRoot p = report.irregular_points[i].point;
        if (compare(p, alpha) == 0) return {true, i};
    }
    for (std::size_t i = 0; i < report.intervals.size(); ++i) {
        const auto& iv = report.intervals[i];
        if (alpha == 0 && iv.closed_at_zero) return {false, i};
        IsolatedRoot lo = iv.lo, hi = iv.hi;
        if (compare(lo, alpha) < 0 && compare(hi, alpha) > 0) return {false, i};
    }
    throw InternalError("partition does not cover " + to_string(alpha));
}

OneSidedSets one_sided_optimal_sets(const PartitionReport& report, const Rational& alpha) {
    Location loc = locate(report, alpha);
    if (loc.at_point) {
        const auto& p = report.irregular_points[loc.index];
        return {p.d_minus, p.d_at, p.d_plus};
    }
    const auto& d = report.intervals[loc.index].optimal;
    return {alpha == 0 ? RuleSet{} : d, d, d};
}

OneSidedSets one_sided_optimal_sets(const Mdp& mdp, const Rational& alpha, const Caps& caps) {
    require_discount(alpha);
    auto sets = one_sided_optimal_sets(canonical_partition(mdp, caps), alpha);
    sets.at = optimal_set(mdp, alpha).optimal.expand(caps.enumeration);
    return sets;
}

RationalVector PiecewiseValue::operator()(const Rational& alpha) const {
    require_discount(alpha);
    for (const auto& piece : pieces) {
        IsolatedRoot lo = piece.lo, hi = piece.hi;
        if (compare(lo, alpha) <= 0 && compare(hi, alpha) >= 0) {
            RationalVector v;
            for (const auto& p : piece.value) v.push_back(p(alpha));
            return v;
        }
    }
    throw InternalError("piecewise value does not cover " + to_string(alpha));
}

PiecewiseValue symbolic_bellman(const Mdp& mdp, const PiecewiseValue& previous, const Caps& caps) {
    std::vector<Segment> segments;
    std::vector<RuleProduct> nodes;
    for (const auto& piece : previous.pieces) {
        auto q = piece_action_values(mdp, piece.value);
        IsolatedRoot lo = piece.lo, hi = piece.hi;
        std::vector<IsolatedRoot> cuts;
        for (std::size_t x = 0; x < q.size(); ++x) {
            for (std::size_t a = 0; a < q[x].size(); ++a) {
                for (std::size_t b = a + 1; b < q[x].size(); ++b) {
                    Polynomial d = q[x][a] - q[x][b];
                    if (d.degree() < 1) continue;
                    for (auto& r : isolate_roots(d, lo, hi)) cuts.push_back(std::move(r));
                }
            }
        }
        sort_unique(cuts);
        cuts.insert(cuts.begin(), lo);
        cuts.push_back(hi);
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            nodes.push_back(argmax_at(q, cuts[k]));
            Segment s{cuts[k], cuts[k + 1], rational_between(cuts[k], cuts[k + 1]), {}, {}};
            s.argmax.allowed.resize(q.size());
            for (std::size_t x = 0; x < q.size(); ++x) {
                Rational best;
                for (std::size_t a = 0; a < q[x].size(); ++a) {
                    Rational v = q[x][a](s.sample);
                    if (a == 0 || v > best) {
                        best = v;
                        s.argmax.allowed[x].clear();
                    }
                    if (v == best) s.argmax.allowed[x].push_back(a);
                }
                s.value.push_back(q[x][s.argmax.allowed[x].front()]);
            }
            segments.push_back(std::move(s));
        }
    }

    PiecewiseValue out;
    out.horizon = previous.horizon + 1;
    for (const auto& s : segments) {
        if (!out.pieces.empty() && out.pieces.back().value == s.value) {
            out.pieces.back().hi = s.hi;
        } else {
            out.pieces.push_back({s.lo, s.hi, s.value});
            if (out.pieces.size() > caps.pieces) throw CapExceeded("pieces", out.pieces.size(), caps.pieces);
        }
    }

    out.d_zero = nodes.front();
    if (nodes.front() != segments.front().argmax)
        out.first_step_points.push_back({segments.front().lo, false, true,
                                         RuleProduct{std::vector<std::vector<std::size_t>>(
                                             mdp.num_states())},
                                         nodes.front(), segments.front().argmax});
    out.first_step_intervals.push_back(
        {segments.front().lo, segments.front().hi, segments.front().sample, segments.front().argmax});
    for (std::size_t k = 1; k < segments.size(); ++k) {
        const auto& minus = segments[k - 1].argmax;
        const auto& plus = segments[k].argmax;
        bool is_break = minus != plus;
        bool is_touching = product_touching(nodes[k], minus, plus);
        if (is_break || is_touching) {
            out.first_step_points.push_back({segments[k].lo, is_break, is_touching, minus, nodes[k], plus});
            out.first_step_intervals.push_back(
                {segments[k].lo, segments[k].hi, segments[k].sample, plus});
        } else {
            out.first_step_intervals.back().hi = segments[k].hi;
        }
    }
    return out;
}

std::vector<PiecewiseValue> symbolic_value_iteration(const Mdp& mdp, std::size_t n_max,
                                                     const Caps& caps) {
    require_valid(mdp);
    if (n_max > caps.symbolic_horizon) throw CapExceeded("symbolic-horizon", n_max, caps.symbolic_horizon);
    std::vector<PiecewiseValue> trace(1);
    std::vector<Polynomial> s;
    for (const auto& v : mdp.terminal) s.emplace_back(v);
    trace[0].pieces.push_back({IsolatedRoot::exact(0), exact_one(), s});
    for (std::size_t n = 1; n <= n_max; ++n) trace.push_back(symbolic_bellman(mdp, trace.back(), caps));
    return trace;
}

std::string to_string(FirstStepKind kind) {
    switch (kind) {
        case FirstStepKind::Regular: return "regular";
        case FirstStepKind::Break: return "break";
        case FirstStepKind::Touching: return "touching";
        case FirstStepKind::BreakTouching: return "break+touching";
    }
    return "regular";
}

FirstStepClassification first_step_classify(const PiecewiseValue& value, const Rational& alpha) {
    require_discount(alpha);
    if (value.horizon == 0) throw InputError("first-step sets need horizon >= 1");
    for (const auto& p : value.first_step_points) {
        IsolatedRoot point = p.point;
        if (compare(point, alpha) != 0) continue;
        FirstStepKind kind = p.is_break ? (p.is_touching ? FirstStepKind::BreakTouching : FirstStepKind::Break)
                                        : FirstStepKind::Touching;
        return {kind, p.d_minus, p.d_at, p.d_plus};
    }
    for (const auto& iv : value.first_step_intervals) {
        IsolatedRoot lo = iv.lo, hi = iv.hi;
        if (compare(lo, alpha) <= 0 && compare(hi, alpha) > 0) {
            RuleProduct minus = iv.optimal;
            if (alpha == 0) minus.allowed.assign(iv.optimal.allowed.size(), {});
            return {FirstStepKind::Regular, minus, iv.optimal, iv.optimal};
        }
    }
    throw InternalError("first-step intervals do not cover " + to_string(alpha));
}

FirstStepClassification first_step_classify(const Mdp& mdp, const Rational& alpha, std::size_t n,
                                            const Caps& caps) {
    if (n == 0) throw InputError("first-step sets need horizon >= 1");
    return first_step_classify(symbolic_value_iteration(mdp, n, caps).back(), alpha);
}

}  // namespace turnpike
