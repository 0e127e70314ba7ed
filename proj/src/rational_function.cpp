#include "turnpike/rational_function.hpp"

#include "turnpike/errors.hpp"

namespace turnpike {

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw ZeroPolynomial();
    if (num.is_zero()) {
        num_ = Polynomial();
        den_ = Polynomial(1);
        return;
    }
    Polynomial g = gcd(num, den);
    if (g.degree() >= 1) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    Rational scale = den(0) != 0 ? den(0) : den.leading();
    Rational inv = Rational(1) / scale;
    num_ = num * inv;
    den_ = den * inv;
}

Rational RationalFunction::operator()(const Rational& at) const {
    Rational d = den_(at);
    if (d == 0) throw InputError("rational function has a pole at " + turnpike::to_string(at));
    return num_(at) / d;
}

RationalFunction RationalFunction::derivative() const {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return {a.num_ - b.num_, a.den_};
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw ZeroPolynomial();
    return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string RationalFunction::to_string(const std::string& var) const {
    if (den_ == Polynomial(1)) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

IntervalSign sign_on_interval(const RationalFunction& f, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw InputError("empty interval");
    if (f.is_zero()) return {SignClass::Zero, {}};
    auto zeros = isolate_roots(f.num(), lo, hi);
    auto poles = f.den().degree() >= 1 ? isolate_roots(f.den(), lo, hi) : std::vector<IsolatedRoot>{};
    if (zeros.empty() && poles.empty()) {
        Rational mid = simplest_between(lo, hi);
        return {sgn(f(mid)) > 0 ? SignClass::Positive : SignClass::Negative, {}};
    }
    std::vector<IsolatedRoot> seps = std::move(zeros);
    for (auto& p : poles) {
        std::size_t i = 0;
        while (i < seps.size() && compare(seps[i], p) < 0) ++i;
        seps.insert(seps.begin() + static_cast<std::ptrdiff_t>(i), std::move(p));
    }
    return {SignClass::Mixed, std::move(seps)};
}

std::string to_string(SignClass s) {
    switch (s) {
        case SignClass::Positive: return "+";
        case SignClass::Negative: return "-";
        case SignClass::Zero: return "0";
        case SignClass::Mixed: return "mixed";
    }
    return "?";
}

}  // namespace turnpike
