#pragma once

#include "turnpike/mdp.hpp"
#include "turnpike/rational.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testing {

using turnpike::Rational;

inline Rational q(const char* text) { return turnpike::parse_rational(text); }

inline Rational random_rational(std::mt19937_64& rng, long lo_num, long hi_num, long max_den) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(lo_num * den, hi_num * den);
    Rational r(num_dist(rng), den);
    r.canonicalize();
    return r;
}

/// Random rational in (0, hi) with denominator at most max_den.
inline Rational random_alpha(std::mt19937_64& rng, const Rational& hi, long max_den = 64) {
    while (true) {
        std::uniform_int_distribution<long> den_dist(2, max_den);
        long den = den_dist(rng);
        std::uniform_int_distribution<long> num_dist(1, den - 1);
        Rational a(num_dist(rng), den);
        a.canonicalize();
        if (a < hi) return a;
    }
}

/// Random stochastic row over m states with denominators at most max_den.
inline turnpike::RationalVector random_row(std::mt19937_64& rng, std::size_t m, long max_den) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    long den = den_dist(rng);
    std::vector<long> counts(m, 0);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    // Sparse-ish rows: spread the mass over at most two targets.
    std::size_t a = pick(rng), b = pick(rng);
    std::uniform_int_distribution<long> split(0, den);
    long k = split(rng);
    counts[a] += k;
    counts[b] += den - k;
    turnpike::RationalVector row(m);
    for (std::size_t y = 0; y < m; ++y) {
        row[y] = Rational(counts[y], den);
        row[y].canonicalize();
    }
    return row;
}

struct RandomMdpOptions {
    std::size_t max_states = 4;
    std::size_t max_actions = 3;
    long max_den = 8;
    bool zero_terminal = false;
};

inline turnpike::Mdp random_mdp(std::mt19937_64& rng, const RandomMdpOptions& opt = {}) {
    std::uniform_int_distribution<std::size_t> ms(1, opt.max_states);
    std::uniform_int_distribution<std::size_t> as(1, opt.max_actions);
    turnpike::Mdp mdp;
    std::size_t m = ms(rng);
    for (std::size_t x = 0; x < m; ++x) mdp.states.push_back("x" + std::to_string(x + 1));
    mdp.actions.resize(m);
    mdp.transition.resize(m);
    mdp.reward.resize(m);
    for (std::size_t x = 0; x < m; ++x) {
        std::size_t k = as(rng);
        for (std::size_t a = 0; a < k; ++a) {
            mdp.actions[x].push_back("a" + std::to_string(a + 1));
            mdp.transition[x].push_back(random_row(rng, m, opt.max_den));
            mdp.reward[x].push_back(random_rational(rng, -2, 2, opt.max_den));
        }
    }
    for (std::size_t x = 0; x < m; ++x)
        mdp.terminal.push_back(opt.zero_terminal ? Rational(0)
                                                 : random_rational(rng, -2, 2, opt.max_den));
    return mdp;
}

}  // namespace testing
