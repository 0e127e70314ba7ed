#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace turnpike {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input: unparsable rationals, bad documents, out-of-range
/// discount factors, unknown identifiers.
class InputError : public Error {
public:
    using Error::Error;
};

/// A configured resource cap was hit. `requested` is the size that would
/// have been needed (rule count, horizon, piece count, prefix count).
class CapExceeded : public Error {
public:
    CapExceeded(std::string cap_name, std::uint64_t requested, std::uint64_t limit)
        : Error("cap exceeded: " + cap_name + " (requested " + std::to_string(requested) +
                ", limit " + std::to_string(limit) + ")"),
          cap_name_(std::move(cap_name)),
          requested_(requested),
          limit_(limit) {}

    const std::string& cap_name() const { return cap_name_; }
    std::uint64_t requested() const { return requested_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::string cap_name_;
    std::uint64_t requested_;
    std::uint64_t limit_;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("singular matrix") {}
};

class ZeroPolynomial : public Error {
public:
    ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};

/// A Markov prefix without a tail was asked for more rules than it holds.
class InsufficientRules : public Error {
public:
    using Error::Error;
};

/// Conditions A and B are only defined at irregular points.
class NotIrregularPoint : public Error {
public:
    using Error::Error;
};

/// Every decision rule is optimal, so no suboptimality gap exists.
class AllRulesOptimal : public Error {
public:
    AllRulesOptimal() : Error("every decision rule is optimal") {}
};

class UnknownExample : public InputError {
public:
    using InputError::InputError;
};

/// A kernel invariant failed. Seeing one of these means a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace turnpike
