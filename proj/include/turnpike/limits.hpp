#pragma once

#include <cstdint>

namespace turnpike {

/// Resource caps shared by the analyses. from_env() reads the overrides
/// TURNPIKE_ENUM_CAP, TURNPIKE_SYMBOLIC_CAP and TURNPIKE_PREFIX_CAP.
struct Caps {
    /// Maximum number of decision rules enumerated.
    std::uint64_t enumeration = 4096;
    /// Maximum horizon of symbolic value iteration.
    std::uint64_t symbolic_horizon = 64;
    /// Maximum pieces of a piecewise value function per horizon.
    std::uint64_t pieces = 10000;
    /// Maximum Markov prefixes enumerated per horizon in Condition B checks.
    std::uint64_t prefixes = 1000000;
    /// Maximum certificate horizon of a turnpike integer. Not read from
    /// the environment.
    std::uint64_t certificate_horizon = 20000;

    static Caps from_env();
};

}  // namespace turnpike
