#pragma once

#include "turnpike/mdp.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace turnpike {

struct ExpectedPoint {
    Rational point;
    bool is_break = false;
    bool is_touching = false;
};

/// Published results attached to a corpus example. Empty fields carry no
/// expectation.
struct Expectations {
    std::vector<ExpectedPoint> irregular_points;
    /// (alpha, N(alpha)) pairs.
    std::vector<std::pair<Rational, unsigned>> turnpike;
    std::optional<unsigned> l_value;
    std::optional<Rational> c_l;
    std::optional<Rational> delta;
    std::optional<Rational> delta_tilde;
    std::string note;
};

struct ExampleFixture {
    std::string id;
    Mdp mdp;
    Expectations expected;
};

/// Identifiers accepted by build_example, in corpus order.
const std::vector<std::string>& example_ids();

/// Builds a corpus example. `chain_length` is the state count of the chain
/// example "ex3" and is ignored otherwise. Throws UnknownExample.
ExampleFixture build_example(const std::string& id, std::size_t chain_length = 4);

}  // namespace turnpike
