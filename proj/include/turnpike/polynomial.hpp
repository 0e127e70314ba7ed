#pragma once

#include "turnpike/rational.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace turnpike {

/// Dense univariate polynomial over Q. coeffs()[i] multiplies x^i; the
/// highest stored coefficient is nonzero unless the polynomial is zero, in
/// which case the coefficient list is empty.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
    Polynomial(int constant) : Polynomial(Rational(constant)) {}  // NOLINT
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<Rational> coeffs);

    static Polynomial x();
    /// c * x^k
    static Polynomial monomial(const Rational& c, unsigned k);

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;
    Rational leading() const;

    Rational operator()(const Rational& at) const;
    int sign_at(const Rational& at) const { return sgn((*this)(at)); }

    Polynomial derivative() const;
    /// Scaled to leading coefficient 1. Zero stays zero.
    Polynomial monic() const;
    /// Integer coefficients with content 1 and positive leading coefficient.
    Polynomial primitive() const;
    /// Same roots, no repeated factors.
    Polynomial square_free() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    Polynomial operator-() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::string to_string(const std::string& var = "a") const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Euclidean division; throws ZeroPolynomial when dividing by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Exact quotient; throws InternalError when b does not divide a.
Polynomial exact_div(const Polynomial& a, const Polynomial& b);
/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial pow(const Polynomial& p, unsigned k);

/// Square-free factors f_1, f_2, ... with p = c * prod f_i^i.
/// Entry i-1 holds f_i; trailing constant factors are dropped.
std::vector<Polynomial> square_free_decomposition(const Polynomial& p);

/// Multiplicity of `root_factor` (square-free) as a divisor of p.
unsigned multiplicity(const Polynomial& p, const Polynomial& root_factor);

}  // namespace turnpike
