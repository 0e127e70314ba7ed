#include "support.hpp"

#include "turnpike/corpus.hpp"
#include "turnpike/equivalence.hpp"
#include "turnpike/linalg.hpp"
#include "turnpike/value_function.hpp"

#include <doctest.h>

using namespace turnpike;

namespace {

RationalVector power_push(const Mdp& mdp, const DecisionRule& rule, RationalVector v, std::size_t t) {
    for (std::size_t i = 0; i < t; ++i) v = push_forward(mdp, rule, v);
    return v;
}

bool brute_pushforwards_equal(const Mdp& mdp, const DecisionRule& r1, const RationalVector& v1,
                              const DecisionRule& r2, const RationalVector& v2) {
    for (std::size_t t = 0; t <= 3 * mdp.num_states(); ++t)
        if (power_push(mdp, r1, v1, t) != power_push(mdp, r2, v2, t)) return false;
    return true;
}

// Largest t with {1, v, Pv, ..., P^{t-2} v} independent.
std::size_t brute_G(const Mdp& mdp, const DecisionRule& rule, const RationalVector& v) {
    const std::size_t m = mdp.num_states();
    if (m == 1) return 1;
    std::vector<RationalVector> family{RationalVector(m, 1)};
    std::size_t g = 1;
    for (std::size_t t = 0; t <= m; ++t) {
        family.push_back(power_push(mdp, rule, v, t));
        if (rank(family) != family.size()) break;
        g = family.size();
    }
    return g;
}

}  // namespace

TEST_CASE("G mapping") {
    Mdp one;
    one.states = {"x"};
    one.actions = {{"a"}};
    one.transition = {{{1}}};
    one.reward = {{1}};
    one.terminal = {0};
    CHECK(compute_G(one, DecisionRule{{0}}, {5}).value == 1);

    Mdp m1 = build_example("ex1").mdp;
    CHECK(compute_G(m1, DecisionRule{{0, 1}}, {1, 1}).value == 1);

    for (std::size_t m : {3, 4, 6}) {
        Mdp chain = build_example("ex3", m).mdp;
        auto rules = enumerate_decision_rules(chain, 1000);
        for (const auto& r : rules) {
            RationalVector v = policy_reward(chain, r);
            CHECK(compute_G(chain, r, v).value == brute_G(chain, r, v));
        }
    }
}

TEST_CASE("pushforward equality") {
    Mdp m1 = build_example("ex1").mdp;
    DecisionRule a{{0, 0}}, b{{1, 1}};
    CHECK(pushforwards_equal(m1, a, {2, 3}, a, {2, 3}));
    CHECK(pushforwards_equal(m1, a, {7, 7}, b, {7, 7}));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        Mdp r = testing::random_mdp(rng);
        auto rules = enumerate_decision_rules(r, 1000);
        std::uniform_int_distribution<std::size_t> pick(0, rules.size() - 1);
        const auto& p1 = rules[pick(rng)];
        const auto& p2 = rules[pick(rng)];
        RationalVector v1(r.num_states()), v2(r.num_states());
        for (std::size_t x = 0; x < v1.size(); ++x) {
            v1[x] = testing::random_rational(rng, -1, 1, 3);
            v2[x] = trial % 2 ? v1[x] : testing::random_rational(rng, -1, 1, 3);
        }
        CHECK(pushforwards_equal(r, p1, v1, p2, v2) == brute_pushforwards_equal(r, p1, v1, p2, v2));
    }
}

TEST_CASE("value equality for all discounts") {
    Mdp m1 = build_example("ex1").mdp;
    DecisionRule phi2{{0, 1}}, phi4{{1, 1}};
    CHECK(values_equal_all_discounts(m1, phi2, phi2));
    CHECK_FALSE(values_equal_all_discounts(m1, phi2, phi4));

    for (const auto& id : example_ids()) {
        Mdp m = build_example(id).mdp;
        auto rules = enumerate_decision_rules(m, 1000);
        std::vector<std::vector<RationalFunction>> f;
        for (const auto& r : rules) f.push_back(value_rational_function(m, r));
        for (std::size_t i = 0; i < rules.size(); ++i)
            for (std::size_t j = i; j < rules.size(); ++j)
                CHECK(values_equal_all_discounts(m, rules[i], rules[j]) == (f[i] == f[j]));
    }
}
