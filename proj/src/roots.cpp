#include "turnpike/roots.hpp"

#include "turnpike/errors.hpp"

#include <algorithm>

namespace turnpike {

IsolatedRoot IsolatedRoot::exact(const Rational& value, unsigned multiplicity) {
    IsolatedRoot r;
    r.poly_ = Polynomial({Rational(-value), Rational(1)});
    r.lo_ = value;
    r.hi_ = value;
    r.exact_ = value;
    r.multiplicity_ = multiplicity;
    return r;
}

IsolatedRoot::IsolatedRoot(Polynomial square_free, Rational lo, Rational hi, unsigned multiplicity)
    : poly_(std::move(square_free)), lo_(std::move(lo)), hi_(std::move(hi)), multiplicity_(multiplicity) {
    if (!(lo_ < hi_)) throw InternalError("isolating bracket must satisfy lo < hi");
    if (poly_.sign_at(lo_) * poly_.sign_at(hi_) >= 0)
        throw InternalError("isolating bracket lacks a sign change");
}

const Rational& IsolatedRoot::value() const {
    if (!exact_) throw InternalError("root is irrational: " + to_string());
    return *exact_;
}

void IsolatedRoot::bisect() {
    if (exact_) return;
    Rational mid = (lo_ + hi_) / 2;
    int sm = poly_.sign_at(mid);
    if (sm == 0) {
        *this = exact(mid, multiplicity_);
        return;
    }
    if (sm == poly_.sign_at(lo_))
        lo_ = mid;
    else
        hi_ = mid;
}

void IsolatedRoot::refine_to(const Rational& width) {
    while (!exact_ && hi_ - lo_ >= width) bisect();
}

Rational IsolatedRoot::sample() const {
    if (exact_) return *exact_;
    return simplest_between(lo_, hi_);
}

double IsolatedRoot::approx() const {
    if (exact_) return exact_->get_d();
    IsolatedRoot copy = *this;
    copy.refine_to(Rational(1, 1) / Rational(mpz_class(1) << 60));
    return Rational((copy.lo_ + copy.hi_) / 2).get_d();
}

std::string IsolatedRoot::to_string() const {
    if (exact_) return turnpike::to_string(*exact_);
    return "root of " + poly_.to_string() + " in (" + turnpike::to_string(lo_) + ", " +
           turnpike::to_string(hi_) + ")";
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
    std::vector<Polynomial> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    Polynomial d = p.derivative();
    if (d.is_zero()) return seq;
    seq.push_back(d);
    while (true) {
        Polynomial r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        // Positive rescaling keeps signs and tames coefficient growth.
        Polynomial next = -r;
        Rational lc = abs(next.leading());
        next *= Rational(1) / lc;
        seq.push_back(std::move(next));
    }
    return seq;
}

int sign_variations(const std::vector<Polynomial>& seq, const Rational& at) {
    int count = 0;
    int last = 0;
    for (const auto& q : seq) {
        int s = q.sign_at(at);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

namespace {

Rational cauchy_bound(const Polynomial& p) {
    Rational lc = abs(p.leading());
    Rational best = 0;
    for (int i = 0; i < p.degree(); ++i) best = std::max(best, Rational(abs(p.coeff(i)) / lc));
    return best + 1;
}

// A point strictly inside (l, h) where f does not vanish.
Rational nonroot_between(const Polynomial& f, const Rational& l, const Rational& h) {
    for (long den = 2;; ++den) {
        for (long num = den / 2; num >= 1; --num) {
            for (long k : {num, den - num}) {
                Rational m = l + (h - l) * ratio(k, den);
                if (f.sign_at(m) != 0) return m;
            }
        }
    }
}

struct Bracket {
    Rational lo, hi;
    bool exact;
};

// Roots in (l, h] for square-free f with f(l) != 0.
void isolate_rec(const Polynomial& f, const std::vector<Polynomial>& seq, const Rational& l,
                 int vl, const Rational& h, int vh, std::vector<Bracket>& out) {
    int n = vl - vh;
    if (n <= 0) return;
    if (n == 1) {
        if (f.sign_at(h) == 0)
            out.push_back({h, h, true});
        else
            out.push_back({l, h, false});
        return;
    }
    Rational m = nonroot_between(f, l, h);
    int vm = sign_variations(seq, m);
    isolate_rec(f, seq, l, vl, m, vm, out);
    isolate_rec(f, seq, m, vm, h, vh, out);
}

std::vector<IsolatedRoot> roots_of_square_free(const Polynomial& f, unsigned multiplicity) {
    std::vector<IsolatedRoot> out;
    if (f.degree() <= 0) return out;
    if (f.degree() == 1) {
        out.push_back(IsolatedRoot::exact(-f.coeff(0) / f.coeff(1), multiplicity));
        return out;
    }
    auto seq = sturm_sequence(f);
    Rational bound = cauchy_bound(f);
    std::vector<Bracket> brackets;
    isolate_rec(f, seq, -bound, sign_variations(seq, -bound), bound, sign_variations(seq, bound),
                brackets);

    // Two rationals with denominators at most |lead| are at least 1/lead^2
    // apart, so once the bracket is that narrow its simplest rational is the
    // only possible rational root.
    mpz_class lead = abs(f.primitive().leading()).get_num();
    Rational width(mpz_class(1), lead * lead);
    for (const auto& b : brackets) {
        if (b.exact) {
            out.push_back(IsolatedRoot::exact(b.lo, multiplicity));
            continue;
        }
        IsolatedRoot r(f, b.lo, b.hi, multiplicity);
        r.refine_to(width);
        if (!r.is_exact()) {
            Rational s = simplest_between(r.lo(), r.hi());
            if (f.sign_at(s) == 0) r = IsolatedRoot::exact(s, multiplicity);
        }
        out.push_back(std::move(r));
    }
    return out;
}

void sort_roots(std::vector<IsolatedRoot>& roots) {
    // Insertion sort: compare() refines in place, which std::sort disallows.
    for (std::size_t i = 1; i < roots.size(); ++i) {
        for (std::size_t j = i; j > 0 && compare(roots[j], roots[j - 1]) < 0; --j)
            std::swap(roots[j], roots[j - 1]);
    }
}

}  // namespace

std::vector<IsolatedRoot> real_roots(const Polynomial& p) {
    auto factors = square_free_decomposition(p);
    std::vector<IsolatedRoot> out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto rs = roots_of_square_free(factors[i].primitive(), static_cast<unsigned>(i + 1));
        for (auto& r : rs) out.push_back(std::move(r));
    }
    sort_roots(out);
    return out;
}

std::vector<IsolatedRoot> isolate_roots(const Polynomial& p, const Rational& lo,
                                        const Rational& hi) {
    auto all = real_roots(p);
    std::vector<IsolatedRoot> out;
    for (auto& r : all) {
        if (compare(r, lo) > 0 && compare(r, hi) < 0) out.push_back(std::move(r));
    }
    return out;
}

std::vector<IsolatedRoot> isolate_roots(const Polynomial& p, IsolatedRoot& lo, IsolatedRoot& hi) {
    auto all = real_roots(p);
    std::vector<IsolatedRoot> out;
    for (auto& r : all) {
        if (compare(r, lo) > 0 && compare(r, hi) < 0) out.push_back(std::move(r));
    }
    return out;
}

std::size_t count_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
    return isolate_roots(p, lo, hi).size();
}

int compare(IsolatedRoot& a, const Rational& b) {
    if (a.is_exact()) return sgn(a.value() - b);
    while (true) {
        if (b <= a.lo()) return 1;
        if (b >= a.hi()) return -1;
        if (a.poly().sign_at(b) == 0) return 0;
        a.bisect();
        if (a.is_exact()) return sgn(a.value() - b);
    }
}

int compare(IsolatedRoot& a, IsolatedRoot& b) {
    if (a.is_exact()) return -compare(b, a.value());
    if (b.is_exact()) return compare(a, b.value());
    Polynomial g = gcd(a.poly(), b.poly());
    while (true) {
        if (a.hi() <= b.lo()) return -1;
        if (b.hi() <= a.lo()) return 1;
        if (g.degree() >= 1) {
            Rational l = std::max(a.lo(), b.lo());
            Rational h = std::min(a.hi(), b.hi());
            if (g.sign_at(l) * g.sign_at(h) < 0) return 0;
        }
        a.bisect();
        b.bisect();
        if (a.is_exact() || b.is_exact()) return compare(a, b);
    }
}

int sign_at(const Polynomial& q, IsolatedRoot& at) {
    if (q.is_zero()) return 0;
    if (at.is_exact()) return q.sign_at(at.value());
    Polynomial g = gcd(q, at.poly());
    if (g.degree() >= 1 && g.sign_at(at.lo()) * g.sign_at(at.hi()) < 0) return 0;
    if (q.degree() >= 1) {
        auto others = real_roots(q);
        for (auto& rho : others) compare(at, rho);
    }
    return q.sign_at(at.sample());
}

Rational rational_between(IsolatedRoot& a, IsolatedRoot& b) {
    if (compare(a, b) >= 0) throw InternalError("rational_between requires a < b");
    while (true) {
        Rational upper = a.is_exact() ? a.value() : a.hi();
        Rational lower = b.is_exact() ? b.value() : b.lo();
        if (upper < lower) return simplest_between(upper, lower);
        a.bisect();
        b.bisect();
    }
}

Rational rational_between(const Rational& a, IsolatedRoot& b) {
    IsolatedRoot ra = IsolatedRoot::exact(a);
    return rational_between(ra, b);
}

Rational rational_between(IsolatedRoot& a, const Rational& b) {
    IsolatedRoot rb = IsolatedRoot::exact(b);
    return rational_between(a, rb);
}

}  // namespace turnpike
