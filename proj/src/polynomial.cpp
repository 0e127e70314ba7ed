#include "turnpike/polynomial.hpp"

#include "turnpike/errors.hpp"

#include <sstream>

namespace turnpike {

Polynomial::Polynomial(const Rational& constant) {
    if (constant != 0) c_.push_back(constant);
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

Polynomial Polynomial::x() { return Polynomial({Rational(0), Rational(1)}); }

Polynomial Polynomial::monomial(const Rational& c, unsigned k) {
    if (c == 0) return {};
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(i)];
}

Rational Polynomial::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational Polynomial::operator()(const Rational& at) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= at;
        acc += *it;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    Polynomial p = *this;
    Rational lc = leading();
    for (auto& c : p.c_) c /= lc;
    return p;
}

Polynomial Polynomial::primitive() const {
    if (is_zero()) return {};
    mpz_class den_lcm = 1;
    for (const auto& c : c_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> ints;
    ints.reserve(c_.size());
    mpz_class content = 0;
    for (const auto& c : c_) {
        mpz_class v = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        ints.push_back(v);
    }
    if (ints.back() < 0) content = -content;
    std::vector<Rational> out;
    out.reserve(ints.size());
    for (auto& v : ints) out.emplace_back(mpz_class(v / content));
    return Polynomial(std::move(out));
}

Polynomial Polynomial::square_free() const {
    if (degree() <= 0) return *this;
    Polynomial g = gcd(*this, derivative());
    return exact_div(*this, g).monic();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    if (is_zero() || o.is_zero()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& c : p.c_) c = -c;
    return p;
}

std::string Polynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational c = coeff(i);
        if (c == 0) continue;
        Rational mag = turnpike::abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = mag == 1;
        if (!unit || i == 0) os << turnpike::to_string(mag);
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw ZeroPolynomial();
    if (a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<Rational> rem = a.coeffs();
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
    const auto& bc = b.coeffs();
    Rational lb = b.leading();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        auto top = static_cast<std::size_t>(k + b.degree());
        Rational f = rem[top] / lb;
        q[static_cast<std::size_t>(k)] = f;
        if (f == 0) continue;
        for (std::size_t j = 0; j < bc.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= f * bc[j];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InternalError("polynomial division is not exact");
    return q;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    // Euclid on primitive parts keeps the coefficient size in check.
    Polynomial x = a.primitive();
    Polynomial y = b.primitive();
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).second;
        x = std::move(y);
        y = r.primitive();
    }
    return x.monic();
}

Polynomial pow(const Polynomial& p, unsigned k) {
    Polynomial result(1);
    Polynomial base = p;
    while (k > 0) {
        if (k & 1U) result *= base;
        base *= base;
        k >>= 1U;
    }
    return result;
}

std::vector<Polynomial> square_free_decomposition(const Polynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    std::vector<Polynomial> out;
    if (p.degree() == 0) return out;
    // Yun's algorithm.
    Polynomial f = p.monic();
    Polynomial a = gcd(f, f.derivative());
    Polynomial b = exact_div(f, a);
    Polynomial c = exact_div(f.derivative(), a);
    Polynomial d = c - b.derivative();
    while (b.degree() > 0) {
        Polynomial g = gcd(b, d);
        out.push_back(g);
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() <= 0) out.pop_back();
    return out;
}

unsigned multiplicity(const Polynomial& p, const Polynomial& root_factor) {
    if (p.is_zero()) throw ZeroPolynomial();
    if (root_factor.degree() <= 0) return 0;
    unsigned k = 0;
    Polynomial q = p;
    while (true) {
        auto [quot, rem] = divmod(q, root_factor);
        if (!rem.is_zero()) break;
        q = std::move(quot);
        ++k;
    }
    return k;
}

}  // namespace turnpike
