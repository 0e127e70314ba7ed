#include "oracles.hpp"
#include "support.hpp"

#include "turnpike/bellman.hpp"
#include "turnpike/conditions.hpp"
#include "turnpike/corpus.hpp"
#include "turnpike/equivalence.hpp"
#include "turnpike/partition.hpp"
#include "turnpike/small_discount.hpp"
#include "turnpike/turnpike.hpp"
#include "turnpike/value_function.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace turnpike;
using testing::q;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (passed) detail << "failed: ";
        else detail << "; ";
        detail << what;
        passed = false;
    }
};

struct TrackedCall {
    Mdp mdp;
    Rational alpha;
    TurnpikeResult result;
};

std::vector<TrackedCall>& tracked() {
    static std::vector<TrackedCall> calls;
    return calls;
}

unsigned tracked_n(const Mdp& mdp, const Rational& alpha) {
    auto r = turnpike_integer(mdp, alpha);
    tracked().push_back({mdp, alpha, r});
    return r.n_value;
}

Mdp ex(const std::string& id, std::size_t m = 4) { return build_example(id, m).mdp; }

Rational sup_norm(const RationalVector& v) {
    Rational best = 0;
    for (const auto& x : v) best = std::max(best, Rational(abs(x)));
    return best;
}

RationalVector minus(RationalVector a, const RationalVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

bool subset(const RuleSet& a, const RuleSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

RuleSet to_set(const std::set<DecisionRule>& s) { return RuleSet(s.begin(), s.end()); }

std::string join(const std::vector<unsigned>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

Outcome criterion1() {
    Outcome o;
    Mdp m = ex("ex1");
    for (const char* a : {"1/10", "1/4", "49/100"}) o.require(tracked_n(m, q(a)) == 2, std::string("N(") + a + ") != 2");
    for (const char* a : {"1/2", "3/4", "9/10"}) o.require(tracked_n(m, q(a)) == 3, std::string("N(") + a + ") != 3");
    auto c = first_step_classify(m, q("1/2"), 2);
    RuleSet minus_set = c.d_minus.expand(), plus_set = c.d_plus.expand(), both;
    std::set_intersection(minus_set.begin(), minus_set.end(), plus_set.begin(), plus_set.end(),
                          std::inserter(both, both.begin()));
    o.require(both == RuleSet{DecisionRule{{1, 1}}}, "D_2(1/2-) and D_2(1/2+) do not meet exactly in phi4");
    if (o.passed) o.detail << "N = 2,2,2,3,3,3; D_2(1/2-) ∩ D_2(1/2+) = {phi4}";
    return o;
}

Outcome criterion2() {
    Outcome o;
    Mdp m = ex("ex4");
    auto rep = canonical_partition(m);
    o.require(rep.irregular_points.size() == 1, "expected one irregular point");
    if (rep.irregular_points.size() == 1) {
        const auto& p = rep.irregular_points[0];
        o.require(p.point.is_exact() && p.point.value() == q("1/2"), "irregular point is not 1/2");
        o.require(p.is_break && !p.is_touching, "1/2 is not a non-touching break");
    }
    for (Side side : {Side::Minus, Side::Plus}) {
        auto a = check_condition_A(m, q("1/2"), side);
        o.require(a.holds == Truth::True && a.method == ConditionMethod::PropoACertificate,
                  a.condition + " not certified");
        auto b = check_condition_B(m, q("1/2"), side);
        o.require(b.holds == Truth::False, b.condition + " does not fail");
    }
    std::vector<unsigned> left, right;
    for (int k = 3; k <= 8; ++k) {
        Rational h(1, 1 << k);
        left.push_back(tracked_n(m, q("1/2") - h));
        right.push_back(tracked_n(m, q("1/2") + h));
    }
    for (const auto* side : {&left, &right}) {
        const char* name = side == &left ? "left" : "right";
        bool strict = true;
        for (std::size_t i = 1; i < side->size(); ++i) strict = strict && (*side)[i] > (*side)[i - 1];
        o.require(strict, std::string(name) + " samples not strictly increasing (" + join(*side) + ")");
        o.require(side->back() > 6, std::string(name) + " samples do not exceed 6");
    }
    o.detail << (o.passed ? "" : "; ") << "N(1/2 - 2^-k) = " << join(left) << ", N(1/2 + 2^-k) = " << join(right)
             << " for k = 3..8";
    return o;
}

Outcome criterion3() {
    Outcome o;
    Mdp m = ex("ex5");
    auto rep = canonical_partition(m);
    o.require(rep.irregular_points.size() == 1 && rep.irregular_points[0].point.is_exact() &&
                  rep.irregular_points[0].point.value() == q("2/3") && rep.irregular_points[0].is_break,
              "single break point at 2/3 not found");
    auto b = check_condition_B(m, q("2/3"), Side::Plus);
    Rational inf = -1;
    for (const auto& p : b.pairs)
        if (inf < 0 || p.tail_extremum < inf) inf = p.tail_extremum;
    o.require(b.holds == Truth::True, "B+ does not hold");
    o.require(inf == q("3/2"), "B+ infimum derivative is " + to_string(inf));
    auto verdict = boundedness_verdict(m, q("2/3"));
    o.require(verdict.left.bound == SideBound::Bounded && verdict.right.bound == SideBound::Bounded,
              "not bounded on both sides");
    for (int i = 0; i <= 9; ++i) {
        Rational a = q("19/20") * i / 9;
        o.require(tracked_n(m, a) == 1, "N(" + to_string(a) + ") != 1");
    }
    if (o.passed) o.detail << "B+ infimum = 3/2; bounded both sides; N = 1 at 10 points";
    return o;
}

Outcome criterion4() {
    Outcome o;
    Mdp m = ex("ex6");
    auto f = policy_filtration(m);
    o.require(f.l_value == 0, "L != 0");
    o.require(f.c_chain.size() == 1 && f.c_chain[0] == Rational(2), "C_0 != 2");
    o.require(f.delta_chain[0] == q("1/2") && f.delta_tilde_chain[0] == q("1/2"), "Delta_0 or Delta~_0 != 1/2");
    auto rep = canonical_partition(m);
    std::optional<Rational> a1;
    for (const auto& p : rep.irregular_points)
        if (p.point.is_exact() && p.point.value() > 0) {
            a1 = p.point.value();
            break;
        }
    o.require(a1 && *a1 == f.delta_tilde(), "a_1 != Delta~_L");
    for (const auto& a : interior_grid(0, q("1/2"), 10)) o.require(tracked_n(m, a) == 1, "N(" + to_string(a) + ") != 1");
    if (o.passed) o.detail << "L = 0, C_0 = 2, Delta_0 = Delta~_0 = a_1 = 1/2; N = 1 at 10 points";
    return o;
}

Outcome criterion5() {
    Outcome o;
    for (std::size_t m : {3, 4, 6}) {
        Mdp chain = ex("ex3", m);
        for (const char* a : {"1/4", "1/2", "3/4"})
            o.require(tracked_n(chain, q(a)) == m, "m = " + std::to_string(m) + ": N(" + a + ") != m");
        o.require(policy_filtration(chain).l_value + 1 == m, "m = " + std::to_string(m) + ": L + 1 != m");
    }
    if (o.passed) o.detail << "N = m and L + 1 = m for m = 3, 4, 6";
    return o;
}

Outcome criterion6() {
    Outcome o;
    Mdp m = ex("ex2");
    auto map = turnpike_intervals(m, 0, q("9/10"), 64);
    std::vector<Rational> points;
    for (const auto& d : map.all_discontinuities()) {
        o.require(d.is_exact(), "irrational discontinuity");
        if (d.is_exact()) points.push_back(d.value());
    }
    o.require(points == std::vector<Rational>{q("1/4"), q("1/2")}, "discontinuities are not {1/4, 1/2}");
    auto two = map.two_sided_discontinuities();
    o.require(two.size() == 1 && two[0].is_exact() && two[0].value() == q("1/2"), "1/2 is not two-sided");
    std::size_t checked = 0;
    for (const auto& iv : map.intervals) {
        o.require(iv.n.has_value() && iv.lo.is_exact() && iv.hi.is_exact(), "interval without exact data");
        if (!iv.n || !iv.lo.is_exact() || !iv.hi.is_exact()) continue;
        std::vector<Rational> samples;
        if (iv.lo.value() == iv.hi.value()) samples.push_back(iv.lo.value());
        else samples = interior_grid(iv.lo.value(), iv.hi.value(), 3);
        if (iv.lo_closed) samples.push_back(iv.lo.value());
        if (iv.hi_closed) samples.push_back(iv.hi.value());
        for (const auto& a : samples) {
            tracked_n(m, a);
            std::size_t horizon = std::max<std::size_t>(tracked().back().result.certificate_horizon + 5, 40);
            unsigned want = oracle::turnpike_n(m, a, horizon);
            o.require(want == *iv.n, "N(" + to_string(a) + ") = " + std::to_string(want) + " but interval says " +
                                         std::to_string(*iv.n));
            ++checked;
        }
    }
    if (o.passed) o.detail << "discontinuities {1/4, 1/2}, 1/2 two-sided; " << checked << " oracle samples agree";
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(20240607);
    testing::RandomMdpOptions opt;
    std::size_t a_checks = 0, b_checks = 0, b_fail = 0, zero_checks = 0, zero_fail = 0, lip_checks = 0,
                corrected_fail = 0;
    std::string first_b;
    for (int inst = 0; inst < 50; ++inst) {
        Mdp m = testing::random_mdp(rng, opt);
        Spreads sp = spreads(m);
        Rational alpha = testing::random_alpha(rng, q("9/10") + Rational(1, 1000), 20);
        RationalVector v = optimal_set(m, alpha).value;
        auto trace = value_iteration(m, alpha, 30);
        const Rational bound = sp.r / (1 - alpha);
        o.require(sup_norm(v) <= bound, "Lemma 1(a) fails for V");
        ++a_checks;
        Rational power = 1;
        for (const auto& step : trace) {
            o.require(sup_norm(step.value) <= bound, "Lemma 1(a) fails at horizon " + std::to_string(step.horizon));
            ++a_checks;
            if (step.horizon >= 1) {
                Rational gap = sup_norm(minus(v, step.value));
                ++b_checks;
                if (gap > power * bound) {
                    ++b_fail;
                    if (first_b.empty())
                        first_b = "instance " + std::to_string(inst) + ", alpha " + to_string(alpha) + ", n " +
                                  std::to_string(step.horizon);
                }
                if (gap > power * (sp.r1 / (1 - alpha) + sp.r2)) ++corrected_fail;
            }
            power *= alpha;
        }
        Mdp zero = with_zero_terminal(m);
        const Rational zero_bound = spreads(zero).r / (1 - alpha);
        power = 1;
        for (const auto& step : value_iteration(zero, alpha, 30)) {
            if (step.horizon >= 1) {
                ++zero_checks;
                if (sup_norm(minus(v, step.value)) > power * zero_bound) ++zero_fail;
            }
            power *= alpha;
        }
        for (int pair = 0; pair < 10; ++pair) {
            Rational a1 = testing::random_alpha(rng, q("9/10") + Rational(1, 1000), 20);
            Rational a2 = testing::random_alpha(rng, q("9/10") + Rational(1, 1000), 20);
            Rational b = std::max(a1, a2);
            Rational lip = sp.r / ((1 - b) * (1 - b)) * abs(a1 - a2);
            auto t1 = value_iteration(m, a1, 12), t2 = value_iteration(m, a2, 12);
            for (std::size_t n = 1; n <= 12; ++n)
                o.require(sup_norm(minus(t1[n].value, t2[n].value)) <= lip, "Lipschitz bound fails for V_n");
            o.require(sup_norm(minus(optimal_set(m, a1).value, optimal_set(m, a2).value)) <= lip,
                      "Lipschitz bound fails for V");
            ++lip_checks;
        }
    }
    o.require(b_fail == 0, "Lemma 1(b) violated in " + std::to_string(b_fail) + " of " + std::to_string(b_checks) +
                               " steps with nonzero terminal rewards (first: " + first_b + ")");
    o.require(zero_fail == 0, "Lemma 1(b) violated on zero-terminal copies");
    o.require(corrected_fail == 0, "terminal-aware bound violated");
    o.detail << (o.passed ? "" : "; ") << a_checks << " Lemma 1(a) checks, " << b_checks << " Lemma 1(b) checks, "
             << lip_checks << " Lipschitz pairs; Lemma 1(b) held in all " << zero_checks
             << " steps of the zero-terminal copies; bound a^n (R1/(1-a) + R2) held in every step";
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::mt19937_64 rng(20240608);
    testing::RandomMdpOptions opt;
    opt.max_states = 3;
    opt.max_actions = 2;
    std::size_t prefixes = 0, pairs = 0;
    for (int inst = 0; inst < 25; ++inst) {
        Mdp m = testing::random_mdp(rng, opt);
        Rational alpha = testing::random_alpha(rng, q("9/10") + Rational(1, 1000), 20);
        auto rules = enumerate_decision_rules(m);
        RationalVector v4 = value_iteration(m, alpha, 4).back().value;
        RationalVector best;
        std::vector<std::size_t> idx(4, 0);
        while (true) {
            MarkovPrefix p;
            for (std::size_t i : idx) p.rules.push_back(rules[i]);
            RationalVector v = evaluate_markov(m, p, alpha, 4);
            if (best.empty()) best = v;
            for (std::size_t x = 0; x < v.size(); ++x) best[x] = std::max(best[x], v[x]);
            ++prefixes;
            std::size_t k = 0;
            while (k < 4 && ++idx[k] == rules.size()) idx[k++] = 0;
            if (k == 4) break;
        }
        o.require(best == v4, "V_4 differs from the best Markov prefix value");

        std::vector<std::vector<RationalFunction>> f;
        for (const auto& r : rules) f.push_back(value_rational_function(m, r));
        for (std::size_t i = 0; i < rules.size(); ++i)
            for (std::size_t j = i; j < rules.size(); ++j, ++pairs)
                o.require(values_equal_all_discounts(m, rules[i], rules[j]) == (f[i] == f[j]),
                          "values_equal_all_discounts disagrees with symbolic identity");
        o.require(optimal_set(m, alpha).optimal.expand() == to_set(oracle::optimal_rules(m, alpha)),
                  "optimal set differs from exhaustive evaluation");
    }
    if (o.passed) o.detail << prefixes << " Markov prefixes, " << pairs << " rule pairs, 25 optimal sets";
    return o;
}

bool same_partition(PartitionReport a, PartitionReport b) {
    if (a.irregular_points.size() != b.irregular_points.size() || a.intervals.size() != b.intervals.size())
        return false;
    for (std::size_t i = 0; i < a.irregular_points.size(); ++i) {
        auto& p = a.irregular_points[i];
        auto& r = b.irregular_points[i];
        if (compare(p.point, r.point) != 0 || p.d_minus != r.d_minus || p.d_at != r.d_at || p.d_plus != r.d_plus ||
            p.is_break != r.is_break || p.is_touching != r.is_touching)
            return false;
    }
    for (std::size_t i = 0; i < a.intervals.size(); ++i)
        if (a.intervals[i].optimal != b.intervals[i].optimal) return false;
    return true;
}

Outcome criterion9() {
    Outcome o;
    std::vector<std::pair<std::string, Mdp>> cases;
    for (const auto& id : example_ids()) cases.emplace_back(id, ex(id));
    std::mt19937_64 rng(20240609);
    testing::RandomMdpOptions opt;
    opt.max_states = 3;
    for (int i = 0; i < 25; ++i) cases.emplace_back("random " + std::to_string(i), testing::random_mdp(rng, opt));
    std::size_t points = 0, discontinuities = 0, suspect = 0, scanned = 0;
    for (const auto& [name, m] : cases) {
        auto rep = canonical_partition(m);
        Mdp bal = balance(m).mdp;
        o.require(same_partition(rep, canonical_partition(bal)), name + ": balancing changes the partition");
        Mdp shifted = m;
        for (auto& s : shifted.terminal) s = testing::random_rational(rng, -2, 2, 8);
        o.require(same_partition(rep, canonical_partition(shifted)), name + ": terminal rewards change the partition");
        for (int k = 0; k < 3; ++k) {
            Rational a = testing::random_alpha(rng, q("9/10"), 20);
            o.require(optimal_set(m, a).optimal == optimal_set(bal, a).optimal, name + ": balancing changes D");
            o.require(turnpike_integer(m, a).n_value == turnpike_integer(bal, a).n_value,
                      name + ": balancing changes N at " + to_string(a));
        }
        for (const auto& p : rep.irregular_points) {
            o.require(subset(p.d_minus, p.d_at) && subset(p.d_plus, p.d_at), name + ": inclusion fails");
            ++points;
        }
        auto sym = symbolic_value_iteration(m, 4);
        for (std::size_t n = 1; n <= 4; ++n)
            for (const auto& p : sym[n].first_step_points) {
                auto at = p.d_at.expand();
                o.require(subset(p.d_minus.expand(), at) && subset(p.d_plus.expand(), at),
                          name + ": first-step inclusion fails");
                ++points;
            }

        // N is bounded on closed intervals free of irregular points, so each
        // partition interval is scanned on a closed piece inside it.
        for (const auto& iv : rep.intervals) {
            IsolatedRoot lo = iv.lo, hi = iv.hi;
            const Rational& s = iv.sample;
            while (lo.hi() >= s && !lo.is_exact()) lo.bisect();
            while (hi.lo() <= s && !hi.is_exact()) hi.bisect();
            Rational a = iv.closed_at_zero ? Rational(0) : lo.hi() + (s - lo.hi()) / 8;
            Rational b = std::min(q("9/10"), Rational(hi.lo() - (hi.lo() - s) / 8));
            if (a >= b) continue;
            auto map = turnpike_intervals(m, a, b, 64);
            if (map.unbounded_suspect) {
                ++suspect;
                continue;
            }
            ++scanned;
            for (const auto& d : map.discontinuities) {
                if (!d.point.is_exact() || !d.n || d.point.value() == 0) continue;
                const Rational& at = d.point.value();
                if (at == a || at == b) continue;
                ++discontinuities;
                o.require(*d.n >= 2, name + ": N < 2 at discontinuity " + to_string(at));
                if (*d.n < 2) continue;
                auto kind = first_step_classify(m, at, *d.n - 1).kind;
                if (d.left && d.right)
                    o.require(kind == FirstStepKind::Touching || kind == FirstStepKind::BreakTouching,
                              name + ": two-sided discontinuity " + to_string(at) + " is not first-step touching");
                else
                    o.require(kind == FirstStepKind::Break || kind == FirstStepKind::BreakTouching,
                              name + ": one-sided discontinuity " + to_string(at) + " is not first-step break");
            }
        }
    }
    o.detail << (o.passed ? "" : "; ") << cases.size() << " instances, " << points << " irregular points, "
             << scanned << " partition intervals scanned, " << discontinuities << " interior discontinuities classified";
    o.require(suspect == 0, std::to_string(suspect) + " interval scans flagged unbounded");
    return o;
}

Outcome criterion10() {
    Outcome o;
    for (const auto& c : tracked()) {
        auto fails = inclusion_failures(c.mdp, c.alpha, c.result.certificate_horizon + 5);
        for (std::size_t n : fails)
            o.require(n < c.result.n_value, "inclusion failure at horizon " + std::to_string(n) + " for alpha " +
                                                to_string(c.alpha) + " with N = " + std::to_string(c.result.n_value));
    }
    if (o.passed) o.detail << tracked().size() << " certificates re-checked to K_cert + 5";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                        criterion6, criterion7, criterion8, criterion9, criterion10};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail << "exception: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << "criterion " << i + 1 << ": " << (o.passed ? "PASS" : "FAIL") << " (" << o.detail.str() << ") ["
                  << secs << " s]" << std::endl;
        if (!o.passed) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
