#pragma once

#include "turnpike/mdp.hpp"

#include <string>
#include <string_view>

namespace turnpike {

/// Current MDP document format version.
inline constexpr int kFormatVersion = 1;

/// Parses an MDP document:
///   {"format_version": 1, "states": [...], "actions": {state: [...]},
///    "transitions": {"state/action": [p, ...]}, "rewards": {"state/action": r},
///    "terminal": [s, ...]}
/// Rationals are "p/q" or integer strings. Throws InputError naming the
/// offending field, or the line and column of a syntax error.
Mdp parse_mdp_document(std::string_view text);

/// Reads and parses a document file. Throws InputError.
Mdp load_mdp_file(const std::string& path);

/// The document of an MDP, pretty-printed with a trailing newline.
std::string serialize_mdp(const Mdp& mdp);

}  // namespace turnpike
