#pragma once

#include "turnpike/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace turnpike {

/// A real algebraic number given by a square-free defining polynomial and
/// an open rational bracket holding exactly one of its roots. Rational roots
/// are always stored exactly (lo == hi == value).
///
/// Refinement narrows the bracket in place; it never changes the number, so
/// comparison helpers take non-const references and refine as needed.
class IsolatedRoot {
public:
    static IsolatedRoot exact(const Rational& value, unsigned multiplicity = 1);
    /// `square_free` must have exactly one root in (lo, hi) and none at the ends.
    IsolatedRoot(Polynomial square_free, Rational lo, Rational hi, unsigned multiplicity = 1);

    bool is_exact() const { return exact_.has_value(); }
    /// Throws InternalError when the root is irrational.
    const Rational& value() const;
    const std::optional<Rational>& exact_value() const { return exact_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    const Polynomial& poly() const { return poly_; }
    /// Multiplicity in the polynomial this root was isolated from.
    unsigned multiplicity() const { return multiplicity_; }

    /// Halves the bracket. No-op for exact roots.
    void bisect();
    void refine_to(const Rational& width);
    /// A rational inside the bracket (the value itself when exact).
    Rational sample() const;
    double approx() const;

    /// "p/q" for exact roots, "[lo, hi]" style description otherwise.
    std::string to_string() const;

private:
    IsolatedRoot() = default;
    Polynomial poly_;
    Rational lo_, hi_;
    std::optional<Rational> exact_;
    unsigned multiplicity_ = 1;
};

/// Sturm sequence p, p', -rem(...), ... of a square-free polynomial.
std::vector<Polynomial> sturm_sequence(const Polynomial& p);
/// Sign variations of the sequence at `at`, zeros skipped.
int sign_variations(const std::vector<Polynomial>& seq, const Rational& at);

/// Every distinct real root of p, ascending. Throws ZeroPolynomial.
std::vector<IsolatedRoot> real_roots(const Polynomial& p);
/// Distinct roots in the open interval (lo, hi), ascending, each tagged with
/// its multiplicity in p. Throws ZeroPolynomial.
std::vector<IsolatedRoot> isolate_roots(const Polynomial& p, const Rational& lo,
                                        const Rational& hi);
/// Distinct roots strictly between two algebraic endpoints, ascending.
std::vector<IsolatedRoot> isolate_roots(const Polynomial& p, IsolatedRoot& lo, IsolatedRoot& hi);
/// Number of distinct roots of p in the open interval (lo, hi).
std::size_t count_roots(const Polynomial& p, const Rational& lo, const Rational& hi);

/// -1, 0, +1. Refines both arguments until decided.
int compare(IsolatedRoot& a, IsolatedRoot& b);
int compare(IsolatedRoot& a, const Rational& b);

/// Exact sign of q at the root.
int sign_at(const Polynomial& q, IsolatedRoot& at);

/// The simplest rational strictly between a and b; requires a < b.
Rational rational_between(IsolatedRoot& a, IsolatedRoot& b);
Rational rational_between(const Rational& a, IsolatedRoot& b);
Rational rational_between(IsolatedRoot& a, const Rational& b);

}  // namespace turnpike
