#include "turnpike/corpus.hpp"

#include "turnpike/errors.hpp"

#include <map>

namespace turnpike {
namespace {

Rational q(const char* text) { return parse_rational(text, false); }

/// Assembles a deterministic MDP from named states and moves.
class Builder {
public:
    explicit Builder(std::vector<std::string> states) {
        for (std::size_t i = 0; i < states.size(); ++i) index_[states[i]] = i;
        mdp_.states = std::move(states);
        const std::size_t m = mdp_.states.size();
        mdp_.actions.resize(m);
        mdp_.transition.resize(m);
        mdp_.reward.resize(m);
        mdp_.terminal.assign(m, Rational(0));
    }

    Builder& move(const std::string& from, const std::string& action, const Rational& reward,
                  const std::string& to) {
        const std::size_t x = index_.at(from);
        RationalVector row(mdp_.states.size(), Rational(0));
        row[index_.at(to)] = 1;
        mdp_.actions[x].push_back(action);
        mdp_.transition[x].push_back(std::move(row));
        mdp_.reward[x].push_back(reward);
        return *this;
    }

    Builder& terminal(RationalVector s) {
        mdp_.terminal = std::move(s);
        return *this;
    }

    Mdp build() const {
        require_valid(mdp_);
        return mdp_;
    }

private:
    Mdp mdp_;
    std::map<std::string, std::size_t> index_;
};

ExampleFixture ex1() {
    ExampleFixture f{"ex1",
                     Builder({"x1", "x2"})
                         .move("x1", "a", 0, "x1")
                         .move("x1", "b", 0, "x2")
                         .move("x2", "c", 0, "x1")
                         .move("x2", "d", 1, "x2")
                         .terminal({2, 0})
                         .build(),
                     {}};
    f.expected.irregular_points = {{0, false, true}};
    for (const char* a : {"1/10", "1/4", "49/100"}) f.expected.turnpike.emplace_back(q(a), 2);
    for (const char* a : {"1/2", "3/4", "9/10"}) f.expected.turnpike.emplace_back(q(a), 3);
    f.expected.turnpike.emplace_back(0, 1);
    f.expected.note = "N = 2 on (0,1/2), N = 3 on [1/2,1); 0 is a touching point with D(0) = {phi2, phi4}";
    return f;
}

ExampleFixture ex2() {
    ExampleFixture f{"ex2",
                     Builder({"x1", "x2", "x3", "x4", "x5"})
                         .move("x1", "a1", q("1/4"), "x2")
                         .move("x1", "a2", 0, "x4")
                         .move("x2", "a", 0, "x3")
                         .move("x3", "a", 1, "x3")
                         .move("x4", "a", 1, "x5")
                         .move("x5", "a", 0, "x5")
                         .build(),
                     {}};
    f.expected.turnpike = {{0, 1},         {q("1/8"), 1}, {q("1/4"), 3}, {q("3/8"), 3},
                           {q("1/2"), 4},  {q("5/8"), 3}, {q("9/10"), 3}};
    f.expected.note = "no irregular points; N jumps at 1/4 and has an isolated value 4 at 1/2";
    return f;
}

ExampleFixture ex3(std::size_t m) {
    if (m < 2) throw InputError("chain example needs at least 2 states");
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
    Builder b(names);
    b.move("x1", "a1", 0, "x1").move("x1", "a2", 0, "x2");
    for (std::size_t i = 1; i + 1 < m; ++i) b.move(names[i], "a", 0, names[i + 1]);
    b.move(names[m - 1], "a", 1, names[m - 1]);
    ExampleFixture f{"ex3", b.build(), {}};
    f.expected.irregular_points = {{0, false, true}};
    for (const char* a : {"1/4", "1/2", "3/4"}) f.expected.turnpike.emplace_back(q(a), m);
    f.expected.l_value = static_cast<unsigned>(m - 1);
    f.expected.c_l = 1;
    f.expected.delta = q("1/2");
    f.expected.delta_tilde = q("1/2");
    f.expected.note = "N = m on (0,1)";
    return f;
}

ExampleFixture ex4() {
    ExampleFixture f{"ex4",
                     Builder({"x1", "x2", "x3", "x4", "x5"})
                         .move("x1", "a1", 1, "x2")
                         .move("x1", "a2", q("26/27"), "x4")
                         .move("x2", "a", 0, "x3")
                         .move("x3", "a", 1, "x2")
                         .move("x4", "a", q("2/9"), "x5")
                         .move("x5", "a", q("14/27"), "x5")
                         .terminal({1, q("1/3"), 1, q("11/27"), q("19/27")})
                         .build(),
                     {}};
    f.expected.irregular_points = {{q("1/2"), true, false}};
    f.expected.turnpike = {{q("1/2"), 1}};
    f.expected.note = "non-touching break at 1/2; A holds and B fails on both sides; N unbounded near 1/2";
    return f;
}

ExampleFixture ex5() {
    ExampleFixture f{"ex5",
                     Builder({"x1", "x2"})
                         .move("x1", "a1", 1, "x1")
                         .move("x1", "a2", 2, "x2")
                         .move("x2", "a", q("1/2"), "x2")
                         .terminal({1, q("-1/2")})
                         .build(),
                     {}};
    f.expected.irregular_points = {{q("2/3"), true, false}};
    for (const char* a : {"0", "1/10", "1/3", "1/2", "2/3", "3/4", "9/10", "19/20"})
        f.expected.turnpike.emplace_back(q(a), 1);
    f.expected.note = "break at 2/3 with A and B holding on both sides; N = 1 everywhere";
    return f;
}

ExampleFixture ex6() {
    ExampleFixture f{"ex6",
                     Builder({"x1", "x2", "x3"})
                         .move("x1", "a1", -1, "x2")
                         .move("x1", "a2", 1, "x3")
                         .move("x2", "a", 1, "x2")
                         .move("x3", "a", -1, "x3")
                         .build(),
                     {}};
    f.expected.irregular_points = {{q("1/2"), true, false}};
    for (const char* a : {"1/10", "1/4", "2/5"}) f.expected.turnpike.emplace_back(q(a), 1);
    f.expected.l_value = 0;
    f.expected.c_l = 2;
    f.expected.delta = q("1/2");
    f.expected.delta_tilde = q("1/2");
    f.expected.note = "a1 = Delta_L = Delta~_L = 1/2";
    return f;
}

/// The Ex4 dynamics with zero terminal rewards. Every state gains a "stop"
/// action paying the old terminal reward and moving to an absorbing
/// zero-reward state, so V_{n+1} here equals V_n of ex4 near 1/2.
ExampleFixture remark_variant() {
    ExampleFixture f{"remark-variant",
                     Builder({"x1", "x2", "x3", "x4", "x5", "z"})
                         .move("x1", "a1", 1, "x2")
                         .move("x1", "a2", q("26/27"), "x4")
                         .move("x1", "stop", 1, "z")
                         .move("x2", "a", 0, "x3")
                         .move("x2", "stop", q("1/3"), "z")
                         .move("x3", "a", 1, "x2")
                         .move("x3", "stop", 1, "z")
                         .move("x4", "a", q("2/9"), "x5")
                         .move("x4", "stop", q("11/27"), "z")
                         .move("x5", "a", q("14/27"), "x5")
                         .move("x5", "stop", q("19/27"), "z")
                         .move("z", "a", 0, "z")
                         .build(),
                     {}};
    f.expected.irregular_points = {{q("1/2"), true, false}};
    f.expected.turnpike = {{q("1/2"), 2}};
    f.expected.note = "deterministic, zero terminal rewards; reproduces the ex4 behavior at 1/2";
    return f;
}

}  // namespace

const std::vector<std::string>& example_ids() {
    static const std::vector<std::string> ids = {"ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "remark-variant"};
    return ids;
}

ExampleFixture build_example(const std::string& id, std::size_t chain_length) {
    if (id == "ex1") return ex1();
    if (id == "ex2") return ex2();
    if (id == "ex3") return ex3(chain_length);
    if (id == "ex4") return ex4();
    if (id == "ex5") return ex5();
    if (id == "ex6") return ex6();
    if (id == "remark-variant") return remark_variant();
    throw UnknownExample("unknown example id: " + id);
}

}  // namespace turnpike
