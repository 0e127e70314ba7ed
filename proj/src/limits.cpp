#include "turnpike/limits.hpp"

#include "turnpike/errors.hpp"

#include <cstdlib>
#include <string>

namespace turnpike {

namespace {

void read_cap(const char* name, std::uint64_t& target) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(raw, &used);
        if (used != std::string(raw).size() || v == 0) throw std::invalid_argument(raw);
        target = v;
    } catch (const std::exception&) {
        throw InputError(std::string(name) + " must be a positive integer, got \"" + raw + "\"");
    }
}

}  // namespace

Caps Caps::from_env() {
    Caps caps;
    read_cap("TURNPIKE_ENUM_CAP", caps.enumeration);
    read_cap("TURNPIKE_SYMBOLIC_CAP", caps.symbolic_horizon);
    read_cap("TURNPIKE_PREFIX_CAP", caps.prefixes);
    return caps;
}

}  // namespace turnpike
