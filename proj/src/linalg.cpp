#include "turnpike/linalg.hpp"

#include "turnpike/errors.hpp"

namespace turnpike {

RationalVector multiply(const RationalMatrix& a, const RationalVector& v) {
    RationalVector out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != v.size()) throw InternalError("dimension mismatch");
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    }
    return out;
}

RationalVector solve_linear(const RationalMatrix& a, const RationalVector& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw InternalError("dimension mismatch");
    RationalMatrix m = a;
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw InternalError("matrix is not square");
        m[i].push_back(b[i]);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw SingularMatrix();
        std::swap(m[piv], m[col]);
        Rational inv = Rational(1) / m[col][col];
        for (std::size_t j = col; j <= n; ++j) m[col][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (std::size_t j = col; j <= n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    if (multiply(a, x) != b) throw InternalError("linear solve failed back-substitution check");
    return x;
}

std::size_t rank(const RationalMatrix& rows) {
    RationalMatrix m = rows;
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < m.size(); ++col) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][col] == 0) continue;
            Rational f = m[i][col] / m[r][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

Polynomial determinant(PolynomialMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return Polynomial(1);
    for (const auto& row : m)
        if (row.size() != n) throw InternalError("matrix is not square");
    int sign = 1;
    Polynomial prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return Polynomial();
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = Polynomial();
        }
        prev = m[k][k];
    }
    Polynomial det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

}  // namespace turnpike
