#include "turnpike/turnpike.hpp"

#include "turnpike/bellman.hpp"
#include "turnpike/errors.hpp"

#include <algorithm>
#include <map>

namespace turnpike {
namespace {

bool contained(const RuleProduct& inner, const RuleProduct& outer) {
    for (std::size_t x = 0; x < inner.allowed.size(); ++x)
        for (std::size_t a : inner.allowed[x])
            if (!std::binary_search(outer.allowed[x].begin(), outer.allowed[x].end(), a)) return false;
    return true;
}

bool all_optimal(const Mdp& mdp, const RuleProduct& d) {
    for (std::size_t x = 0; x < mdp.num_states(); ++x)
        if (d.allowed[x].size() != mdp.num_actions(x)) return false;
    return true;
}

/// A member of `inner` outside `outer`.
DecisionRule escaping_rule(const RuleProduct& inner, const RuleProduct& outer) {
    DecisionRule r = inner.smallest();
    for (std::size_t x = 0; x < inner.allowed.size(); ++x) {
        for (std::size_t a : inner.allowed[x]) {
            if (!std::binary_search(outer.allowed[x].begin(), outer.allowed[x].end(), a)) {
                r.choice[x] = a;
                return r;
            }
        }
    }
    throw InternalError("set is contained in the optimal set");
}

SuboptimalityGap gap_from(const Mdp& mdp, const Rational& alpha, const OptimalSets& opt) {
    auto q = action_values(mdp, alpha, opt.value);
    std::optional<SuboptimalityGap> best;
    for (std::size_t x = 0; x < mdp.num_states(); ++x) {
        for (std::size_t a = 0; a < q[x].size(); ++a) {
            Rational defect = opt.value[x] - q[x][a];
            if (defect <= 0) continue;
            if (!best || defect < best->gap) {
                DecisionRule w = opt.optimal.smallest();
                w.choice[x] = a;
                best = SuboptimalityGap{defect, w};
            }
        }
    }
    if (!best) throw AllRulesOptimal();
    return *best;
}

void sort_unique(std::vector<IsolatedRoot>& roots) {
    for (std::size_t i = 1; i < roots.size(); ++i)
        for (std::size_t j = i; j > 0 && compare(roots[j], roots[j - 1]) < 0; --j)
            std::swap(roots[j], roots[j - 1]);
    std::vector<IsolatedRoot> out;
    for (auto& r : roots)
        if (out.empty() || compare(out.back(), r) != 0) out.push_back(r);
    roots = std::move(out);
}

/// A rational inside (lo, toward) close to lo, usable as a probe anchor.
Rational anchor(IsolatedRoot end, const Rational& toward) {
    if (end.is_exact()) return end.value();
    Rational width = abs(toward - end.lo()) / 1024;
    end.refine_to(width);
    return toward > end.hi() ? end.hi() : end.lo();
}

constexpr int kProbes = 6;

}  // namespace

SuboptimalityGap suboptimality_gap(const Mdp& mdp, const Rational& alpha) {
    require_valid(mdp);
    return gap_from(mdp, alpha, optimal_set(mdp, alpha));
}

std::vector<std::size_t> inclusion_failures(const Mdp& mdp, const Rational& alpha, std::size_t horizon) {
    auto opt = optimal_set(mdp, alpha);
    auto trace = value_iteration(mdp, alpha, horizon);
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n <= horizon; ++n)
        if (!contained(trace[n].first_step_optimal, opt.optimal)) out.push_back(n);
    return out;
}

TurnpikeResult turnpike_integer(const Mdp& mdp, const Rational& alpha, const Caps& caps) {
    require_valid(mdp);
    require_discount(alpha);
    TurnpikeResult res;
    res.alpha = alpha;
    if (alpha == 0) return res;

    Balanced bal = balance(mdp);
    auto opt = optimal_set(bal.mdp, alpha);
    RationalVector spread(mdp.num_states());
    for (std::size_t x = 0; x < spread.size(); ++x) spread[x] = opt.value[x] - bal.mdp.terminal[x];
    res.value_spread = max_norm(spread);
    if (all_optimal(mdp, opt.optimal)) return res;

    auto gap = gap_from(bal.mdp, alpha, opt);
    res.gap = gap.gap;
    Rational bound = 2 * alpha * res.value_spread;
    std::size_t k = 0;
    while (bound >= gap.gap) {
        bound *= alpha;
        if (++k > caps.certificate_horizon) throw CapExceeded("certificate-horizon", k, caps.certificate_horizon);
    }
    res.certificate_horizon = k;

    auto trace = value_iteration(bal.mdp, alpha, k);
    for (std::size_t n = k; n >= 1; --n) {
        if (!contained(trace[n].first_step_optimal, opt.optimal)) {
            res.n_value = static_cast<unsigned>(n + 1);
            res.witness = escaping_rule(trace[n].first_step_optimal, opt.optimal);
            break;
        }
    }
    return res;
}

std::vector<IsolatedRoot> TurnpikeIntervalMap::left_discontinuities() const {
    std::vector<IsolatedRoot> out;
    for (const auto& d : discontinuities)
        if (d.left) out.push_back(d.point);
    return out;
}

std::vector<IsolatedRoot> TurnpikeIntervalMap::right_discontinuities() const {
    std::vector<IsolatedRoot> out;
    for (const auto& d : discontinuities)
        if (d.right) out.push_back(d.point);
    return out;
}

std::vector<IsolatedRoot> TurnpikeIntervalMap::all_discontinuities() const {
    std::vector<IsolatedRoot> out;
    for (const auto& d : discontinuities)
        if (d.left || d.right) out.push_back(d.point);
    return out;
}

std::vector<IsolatedRoot> TurnpikeIntervalMap::two_sided_discontinuities() const {
    std::vector<IsolatedRoot> out;
    for (const auto& d : discontinuities)
        if (d.left && d.right) out.push_back(d.point);
    return out;
}

TurnpikeIntervalMap turnpike_intervals(const Mdp& mdp, const Rational& lo, const Rational& hi,
                                       std::size_t n_cap, const Caps& caps) {
    require_valid(mdp);
    if (!(0 <= lo && lo < hi && hi < 1))
        throw InputError("interval must satisfy 0 <= lo < hi < 1, got [" + to_string(lo) + ", " +
                         to_string(hi) + "]");
    if (n_cap == 0) throw InputError("n_cap must be positive");
    const auto report = canonical_partition(mdp, caps);
    std::vector<PiecewiseValue> trace = symbolic_value_iteration(mdp, 1, caps);
    std::map<Rational, unsigned> memo;
    auto turnpike_at = [&](const Rational& t) {
        auto it = memo.find(t);
        if (it != memo.end()) return it->second;
        unsigned n = turnpike_integer(mdp, t, caps).n_value;
        memo.emplace(t, n);
        return n;
    };

    TurnpikeIntervalMap map;
    map.lo = lo;
    map.hi = hi;
    IsolatedRoot a = IsolatedRoot::exact(lo), b = IsolatedRoot::exact(hi);
    std::size_t k = 1;
    std::vector<IsolatedRoot> cands;
    std::vector<std::optional<unsigned>> at;
    std::vector<unsigned> between;
    while (true) {
        if (k > caps.symbolic_horizon) throw CapExceeded("symbolic-horizon", k, caps.symbolic_horizon);
        while (trace.size() <= k) trace.push_back(symbolic_bellman(mdp, trace.back(), caps));
        cands = {a, b};
        auto consider = [&](IsolatedRoot p) {
            if (compare(p, a) > 0 && compare(p, b) < 0) cands.push_back(std::move(p));
        };
        for (const auto& p : report.irregular_points) consider(p.point);
        for (std::size_t n = 1; n <= k; ++n)
            for (const auto& p : trace[n].first_step_points) consider(p.point);
        sort_unique(cands);

        unsigned highest = 0;
        at.assign(cands.size(), std::nullopt);
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (!cands[i].is_exact()) continue;
            at[i] = turnpike_at(cands[i].value());
            highest = std::max(highest, *at[i]);
        }
        between.assign(cands.size() - 1, 0);
        bool varies = false;
        for (std::size_t i = 0; i + 1 < cands.size(); ++i) {
            Rational mid = rational_between(cands[i], cands[i + 1]);
            between[i] = turnpike_at(mid);
            highest = std::max(highest, between[i]);
            for (const Rational& end : {anchor(cands[i], mid), anchor(cands[i + 1], mid)}) {
                Rational step = (mid - end) / 2;
                for (int j = 0; j < kProbes; ++j, step /= 2) {
                    unsigned n = turnpike_at(end + step);
                    highest = std::max(highest, n);
                    varies = varies || n != between[i];
                }
            }
        }
        map.horizon_used = k;
        if (highest - 1 > k) {
            if (highest - 1 > n_cap) {
                map.unbounded_suspect = true;
                break;
            }
            k = highest - 1;
            continue;
        }
        if (varies) throw InternalError("turnpike function varies between candidate points");
        break;
    }

    auto same = [](const std::optional<unsigned>& x, const std::optional<unsigned>& y) {
        return x && y && *x == *y;
    };
    auto extend = [&](const IsolatedRoot& l, const IsolatedRoot& h, bool point, std::optional<unsigned> n) {
        if (!map.intervals.empty() && same(map.intervals.back().n, n)) {
            map.intervals.back().hi = h;
            map.intervals.back().hi_closed = point;
        } else {
            map.intervals.push_back({l, h, point, point, n});
        }
    };
    for (std::size_t i = 0; i < cands.size(); ++i) {
        extend(cands[i], cands[i], true, at[i]);
        if (i + 1 < cands.size()) extend(cands[i], cands[i + 1], false, between[i]);
    }

    for (std::size_t i = 0; i < cands.size(); ++i) {
        DiscontinuityPoint d{cands[i], at[i]};
        bool has_left = i > 0, has_right = i + 1 < cands.size();
        if (!at[i]) {
            d.indeterminate = true;
            map.discontinuities.push_back(d);
            continue;
        }
        d.left = has_left && *at[i] != between[i - 1];
        d.right = has_right && *at[i] != between[i];
        if (d.left || d.right) map.discontinuities.push_back(d);
    }
    return map;
}

TurnpikeCover turnpike_cover(const Mdp& mdp, const Rational& lo, const Rational& hi, const Rational& epsilon,
                             std::size_t n_cap, const Caps& caps) {
    if (epsilon <= 0) throw InputError("epsilon must be positive");
    if (!(0 <= lo && lo < hi && hi < 1))
        throw InputError("interval must satisfy 0 <= lo < hi < 1, got [" + to_string(lo) + ", " +
                         to_string(hi) + "]");
    using Span = std::pair<Rational, Rational>;

    /// Removes open neighbourhoods of the points from closed spans, each of
    /// width at most `width`.
    auto excise = [](std::vector<Span> spans, std::vector<IsolatedRoot> points, const Rational& width) {
        for (auto& p : points) {
            Rational l, h;
            if (p.is_exact()) {
                l = p.value() - width / 2;
                h = p.value() + width / 2;
            } else {
                p.refine_to(width / 2);
                l = p.lo() - width / 4;
                h = p.hi() + width / 4;
            }
            std::vector<Span> next;
            for (const auto& [a, b] : spans) {
                if (h <= a || l >= b) {
                    next.push_back({a, b});
                    continue;
                }
                if (l > a) next.push_back({a, l});
                if (h < b) next.push_back({h, b});
            }
            spans = std::move(next);
        }
        return spans;
    };

    auto report = canonical_partition(mdp, caps);
    std::vector<IsolatedRoot> irregular;
    IsolatedRoot a = IsolatedRoot::exact(lo), b = IsolatedRoot::exact(hi);
    for (auto p : report.irregular_points)
        if (compare(p.point, a) >= 0 && compare(p.point, b) <= 0) irregular.push_back(p.point);
    std::vector<Span> spans{{lo, hi}};
    if (!irregular.empty()) spans = excise(spans, irregular, epsilon / (2 * Rational(irregular.size()) + 1));

    std::vector<IsolatedRoot> jumps;
    for (const auto& [l, h] : spans) {
        auto map = turnpike_intervals(mdp, l, h, n_cap, caps);
        if (map.unbounded_suspect) throw CapExceeded("turnpike-horizon", map.horizon_used + 1, n_cap);
        for (const auto& d : map.discontinuities) jumps.push_back(d.point);
    }
    std::vector<Span> pieces = spans;
    if (!jumps.empty()) pieces = excise(pieces, jumps, epsilon / (4 * Rational(jumps.size()) + 1));

    TurnpikeCover cover;
    Rational kept = 0;
    for (const auto& [l, h] : pieces) {
        if (l >= h) continue;
        Rational t = (l + h) / 2;
        cover.intervals.push_back({l, h, turnpike_integer(mdp, t, caps).n_value});
        kept += h - l;
    }
    cover.excised = (hi - lo) - kept;
    if (cover.excised >= epsilon) throw InternalError("cover excised too much");
    return cover;
}

}  // namespace turnpike
