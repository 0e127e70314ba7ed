#include "turnpike/rational.hpp"

#include "turnpike/errors.hpp"

#include <algorithm>
#include <cctype>

namespace turnpike {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

mpz_class parse_integer(std::string_view s) {
    std::string text(s);
    if (!text.empty() && text[0] == '+') text.erase(0, 1);
    return mpz_class(text, 10);
}

}  // namespace

Rational parse_rational(std::string_view text, bool allow_decimal) {
    auto fail = [&]() -> Rational {
        throw InputError("not an exact rational: \"" + std::string(text) + "\"");
    };
    if (text.empty()) return fail();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' ||
            den[0] == '+')
            return fail();
        mpz_class d = parse_integer(den);
        if (d == 0) return fail();
        Rational r(parse_integer(num), d);
        r.canonicalize();
        return r;
    }
    if (is_integer_literal(text)) return Rational(parse_integer(text));

    if (!allow_decimal) return fail();
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return fail();
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) return fail();
    auto digits = [](std::string_view s) {
        return std::all_of(s.begin(), s.end(),
                           [](unsigned char c) { return std::isdigit(c) != 0; });
    };
    if (!digits(whole) || !digits(frac)) return fail();
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class w = whole.empty() ? mpz_class(0) : parse_integer(whole);
    mpz_class f = frac.empty() ? mpz_class(0) : parse_integer(frac);
    Rational r(w * scale + f, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational ratio(long num, long den) {
    if (den == 0) throw InputError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational pow(const Rational& base, unsigned exponent) {
    Rational result = 1;
    Rational b = base;
    while (exponent > 0) {
        if (exponent & 1U) result *= b;
        b *= b;
        exponent >>= 1U;
    }
    return result;
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

int sign(const Rational& value) { return sgn(value); }

// Stern-Brocot style continued-fraction descent.
Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw InternalError("simplest_between requires lo < hi");
    if (lo < 0 && hi > 0) return 0;
    if (hi <= 0) return -simplest_between(-hi, -lo);

    // 0 <= lo < hi. Find simplest x with lo < x < hi.
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    Rational candidate(fl + 1);
    if (candidate < hi) {
        // An integer lies strictly inside; the smallest such is simplest.
        return candidate;
    }
    // floor(lo) < lo?  If lo is an integer then fl == lo and (fl, fl+1) ⊇ (lo,hi).
    Rational frac_lo = lo - Rational(fl);
    Rational frac_hi = hi - Rational(fl);
    // frac_lo in [0,1), frac_hi in (0,1]. x = fl + 1/y with y in (1/frac_hi, 1/frac_lo).
    Rational y_lo = 1 / frac_hi;
    Rational y;
    if (frac_lo == 0) {
        // y > y_lo, unbounded above: simplest is floor(y_lo) + 1.
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), y_lo.get_num_mpz_t(), y_lo.get_den_mpz_t());
        y = Rational(f + 1);
    } else {
        y = simplest_between(y_lo, 1 / frac_lo);
    }
    return Rational(fl) + 1 / y;
}

Rational max_norm(const RationalVector& v) {
    Rational best = 0;
    for (const auto& x : v) best = std::max(best, abs(x));
    return best;
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace turnpike
