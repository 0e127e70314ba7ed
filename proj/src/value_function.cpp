#include "turnpike/value_function.hpp"

#include "turnpike/errors.hpp"
#include "turnpike/linalg.hpp"

namespace turnpike {

std::vector<RationalFunction> value_rational_function(const Mdp& mdp, const DecisionRule& rule) {
    const std::size_t m = mdp.num_states();
    const auto p = policy_matrix(mdp, rule);
    const auto r = policy_reward(mdp, rule);
    PolynomialMatrix base(m, std::vector<Polynomial>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            base[i][j] = Polynomial({Rational(i == j ? 1 : 0), Rational(-p[i][j])});
    Polynomial det = determinant(base);
    if (det.degree() > static_cast<int>(m))
        throw InternalError("value denominator exceeds degree bound");

    std::vector<RationalFunction> out;
    out.reserve(m);
    for (std::size_t x = 0; x < m; ++x) {
        PolynomialMatrix mx = base;
        for (std::size_t i = 0; i < m; ++i) mx[i][x] = Polynomial(r[i]);
        Polynomial num = determinant(mx);
        if (num.degree() > static_cast<int>(m))
            throw InternalError("value numerator exceeds degree bound");
        out.emplace_back(num, det);
    }
    return out;
}

RationalVector evaluate(const std::vector<RationalFunction>& f, const Rational& alpha) {
    RationalVector v;
    v.reserve(f.size());
    for (const auto& c : f) v.push_back(c(alpha));
    return v;
}

}  // namespace turnpike
