#pragma once

#include "turnpike/polynomial.hpp"
#include "turnpike/roots.hpp"

#include <string>
#include <vector>

namespace turnpike {

/// num/den in lowest terms. The denominator is scaled so that den(0) = 1
/// when den(0) != 0 and is monic otherwise, which makes equal functions
/// structurally identical.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(1) {}
    RationalFunction(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT
    RationalFunction(const Rational& c) : num_(c), den_(1) {}    // NOLINT
    /// Throws ZeroPolynomial when den is zero.
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// Throws InputError when the denominator vanishes at `at`.
    Rational operator()(const Rational& at) const;
    RationalFunction derivative() const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction operator-() const { return {-num_, den_}; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    std::string to_string(const std::string& var = "a") const;

private:
    Polynomial num_, den_;
};

enum class SignClass { Positive, Negative, Zero, Mixed };

struct IntervalSign {
    SignClass sign;
    /// For Mixed: the zeros and poles of f inside the interval, ascending.
    std::vector<IsolatedRoot> separators;
};

/// Sign of f on the open interval (lo, hi).
IntervalSign sign_on_interval(const RationalFunction& f, const Rational& lo, const Rational& hi);

std::string to_string(SignClass s);

}  // namespace turnpike
